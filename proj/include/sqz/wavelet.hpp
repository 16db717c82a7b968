#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sqz/codecs.hpp"
#include "sqz/kernels.hpp"
#include "sqz/signal.hpp"

namespace sqz {

// Daubechies four-tap orthonormal filters: h = ((1+s3), (3+s3), (3-s3),
// (1-s3)) / (4*sqrt(2)) with s3 = sqrt(3), and g[k] = (-1)^k h[3-k].
const kernels::FilterPair& d4_filters() noexcept;

// Residuals of the four equations that define h: sum h - sqrt(2),
// h0*h2 + h1*h3, alternating sum, sum h^2 - 1.
std::array<double, 4> d4_equation_residuals(const kernels::FilterPair& f) noexcept;

struct WaveletDecomposition {
  std::size_t levels = 0;
  std::vector<double> approximation;          // padded_len / 2^levels
  std::vector<std::vector<double>> details;   // details[j-1] has padded_len / 2^j
  std::size_t original_len = 0;
  std::size_t padded_len = 0;
  double sample_rate_hz = kDefaultSampleRateHz;

  std::size_t coefficient_count() const noexcept;
};

// Zero-pads to the next multiple of 2^levels and runs the periodic pyramid.
// Throws TooManyLevels when the coarsest band would hold fewer than 4 values.
WaveletDecomposition dwt(const Signal& s, std::size_t levels);
WaveletDecomposition dwt(std::span<const double> samples, double sample_rate_hz, std::size_t levels);

// Perfect reconstruction; padding is stripped using original_len.
Signal idwt(const WaveletDecomposition& d);
std::vector<double> idwt_padded(const WaveletDecomposition& d);

// Coefficients laid out [approximation, details[L-1], ..., details[0]].
std::vector<double> flatten(const WaveletDecomposition& d);
WaveletDecomposition unflatten(std::span<const double> coeffs, std::size_t levels, std::size_t original_len,
                               double sample_rate_hz);

std::size_t padded_length(std::size_t n, std::size_t levels);
// Deepest level count <= wanted that the length supports; 0 if none.
std::size_t feasible_levels(std::size_t n, std::size_t wanted);

struct LossyPlan {
  double target_ratio = 6.0;
  unsigned quantizer_bits = 12;  // 4..16

  void validate() const;
};

inline constexpr std::size_t kDefaultWaveletLevels = 5;
// Ratios for signals count 16-bit samples: two source bytes per sample.
inline constexpr std::size_t kSignalBytesPerSample = 2;

// Payload header, little-endian:
//   u8 levels | u8 quantizer_bits | u8 entropy (0 raw, 1 LZW) | u8 reserved
//   u32 kept | u64 original_len | u64 padded_len | f64 sample_rate_hz
//   f64 max_abs | f64 nmse | f64 achieved_ratio | u64 body_len
// Body (before the entropy stage): significance bitmap, one bit per
// coefficient MSB first, then each kept coefficient as a quantizer_bits
// two's-complement integer, in coefficient order.
inline constexpr std::size_t kWaveletHeaderSize = 64;

struct WaveletHeader {
  std::size_t levels = 0;
  unsigned quantizer_bits = 0;
  bool lzw = false;
  std::size_t kept = 0;
  std::size_t original_len = 0;
  std::size_t padded_len = 0;
  double sample_rate_hz = 0.0;
  double max_abs = 0.0;
  double nmse = 0.0;
  double achieved_ratio = 0.0;
  std::size_t body_len = 0;
};

// Keeps the largest-magnitude coefficients that fit byte_budget (header
// included). Throws RatioUnreachable if nothing fits.
std::vector<std::uint8_t> wavelet_encode_budget(const Signal& s, std::size_t byte_budget,
                                                unsigned quantizer_bits, std::size_t levels);
Signal wavelet_decode_payload(std::span<const std::uint8_t> payload);
// Dequantized coefficients in flatten() order; zeros where dropped.
std::vector<double> wavelet_payload_coefficients(std::span<const std::uint8_t> payload);
WaveletHeader read_wavelet_header(std::span<const std::uint8_t> payload);

Codestream wavelet_compress(const Signal& s, const LossyPlan& plan);
Signal wavelet_decompress(const Codestream& c);

}  // namespace sqz
