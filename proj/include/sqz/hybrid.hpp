#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "sqz/codecs.hpp"
#include "sqz/signal.hpp"
#include "sqz/wavelet.hpp"

namespace sqz {

// Five-parameter fundamental: the sinusoid A*sin(2*pi*f*k/fs + phase) is
// present on [begin_sample, end_sample).
struct FundamentalParams {
  std::size_t begin_sample = 0;
  std::size_t end_sample = 0;
  double amplitude = 0.0;
  double freq_hz = 0.0;
  double phase_rad = 0.0;  // (-pi, pi]

  friend bool operator==(const FundamentalParams&, const FundamentalParams&) = default;
};

struct SearchBand {
  double lo_hz = 40.0;
  double hi_hz = 80.0;
};

struct FundamentalOptions {
  SearchBand band{};
  // Restrict [begin, end) to the longest run of cycles whose RMS stays within
  // 3 dB of the median cycle RMS.
  bool segment = false;
};

inline constexpr double kPeakToMedianMin = 3.0;
inline constexpr std::size_t kMinCycles = 4;
inline constexpr std::size_t kFftPadFactor = 4;

FundamentalParams estimate_fundamental(const Signal& s, const FundamentalOptions& options = {});

Signal subtract_fundamental(const Signal& s, const FundamentalParams& p);
// Fundamental alone, zero outside [begin, end).
Signal synthesize_fundamental(const FundamentalParams& p, std::size_t n, double sample_rate_hz);

// Payload, little-endian:
//   u8 version = 1 | u8 flags (bit0: residue present) | u16 reserved
//   u64 begin | u64 end | u64 sample_count
//   f64 amplitude | f64 freq_hz | f64 phase_rad | f64 sample_rate_hz
//   wavelet payload of the residue (present iff flags bit0)
inline constexpr std::size_t kHybridHeaderSize = 60;
// Residues whose energy relative to the signal is at or below this are
// dropped rather than coded.
inline constexpr double kResidueFloor = 1e-12;

struct HybridOptions {
  FundamentalOptions fundamental{};
  std::size_t wavelet_levels = kDefaultWaveletLevels;
};

Codestream hybrid_encode(const Signal& s, const LossyPlan& plan, const HybridOptions& options = {});
Signal hybrid_decode(const Codestream& c);

struct HybridHeader {
  FundamentalParams params;
  std::size_t sample_count = 0;
  double sample_rate_hz = 0.0;
  bool has_residue = false;
};

HybridHeader read_hybrid_header(std::span<const std::uint8_t> payload);

}  // namespace sqz
