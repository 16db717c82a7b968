#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "byteio.hpp"
#include "sqz/error.hpp"
#include "sqz/wavelet.hpp"

namespace sqz {
namespace {

std::size_t bitmap_bytes(std::size_t coefficients) { return (coefficients + 7) / 8; }

std::size_t value_bytes(std::size_t kept, unsigned bits) { return (kept * bits + 7) / 8; }

double quant_levels(unsigned bits) { return std::ldexp(1.0, static_cast<int>(bits) - 1) - 1.0; }

// Indices of the `m` largest magnitudes, larger first, lower index on ties.
std::vector<std::size_t> top_indices(const std::vector<double>& c, std::size_t m) {
  std::vector<std::size_t> idx(c.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  auto before = [&](std::size_t a, std::size_t b) {
    const double fa = std::fabs(c[a]);
    const double fb = std::fabs(c[b]);
    return fa != fb ? fa > fb : a < b;
  };
  if (m < idx.size()) {
    std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(m), idx.end(), before);
    idx.resize(m);
  }
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<double> dequantize_coefficients(std::span<const std::uint8_t> body, std::size_t padded,
                                            std::size_t kept, unsigned bits, double max_abs) {
  const std::size_t map_len = bitmap_bytes(padded);
  if (body.size() != map_len + value_bytes(kept, bits)) fail(Errc::CorruptStream, "coefficient body size");
  detail::BitReader map(body.first(map_len));
  detail::BitReader values(body.subspan(map_len));
  const double levels = quant_levels(bits);
  const std::int64_t limit = static_cast<std::int64_t>(levels);
  std::vector<double> c(padded, 0.0);
  std::size_t seen = 0;
  for (std::size_t i = 0; i < padded; ++i) {
    if (map.get(1) == 0) continue;
    if (++seen > kept) fail(Errc::CorruptStream, "bitmap marks more coefficients than stored");
    std::int64_t q = values.get(bits);
    if (q >= (std::int64_t{1} << (bits - 1))) q -= std::int64_t{1} << bits;
    if (q < -limit || q > limit) fail(Errc::CorruptStream, "quantized coefficient out of range");
    c[i] = static_cast<double>(q) / levels * max_abs;
  }
  if (seen != kept) fail(Errc::CorruptStream, "bitmap marks fewer coefficients than stored");
  while (map.bit_position() < map.total_bits()) {
    if (map.get(1) != 0) fail(Errc::CorruptStream, "nonzero bitmap padding");
  }
  while (values.bit_position() < values.total_bits()) {
    if (values.get(1) != 0) fail(Errc::CorruptStream, "nonzero value padding");
  }
  return c;
}

struct Encoded {
  std::vector<std::uint8_t> payload;
  WaveletHeader header;
};

Encoded encode(const Signal& s, std::size_t byte_budget, unsigned bits, std::size_t wanted_levels) {
  if (bits < 4 || bits > 16) fail(Errc::InvalidArgument, "quantizer bits must be in [4, 16]");
  const std::size_t levels = feasible_levels(s.size(), wanted_levels);
  if (levels == 0) {
    fail(Errc::TooManyLevels, "signal of " + std::to_string(s.size()) + " samples is too short to transform");
  }
  const WaveletDecomposition d = dwt(s, levels);
  const std::vector<double> coeffs = flatten(d);
  const std::size_t padded = coeffs.size();

  const std::size_t fixed = kWaveletHeaderSize + bitmap_bytes(padded);
  if (byte_budget < fixed) {
    fail(Errc::RatioUnreachable, "budget of " + std::to_string(byte_budget) + " bytes cannot hold the " +
                                     std::to_string(fixed) + "-byte header and significance map");
  }
  const std::size_t kept = std::min(padded, (byte_budget - fixed) * 8 / bits);

  const double max_abs = kernels::max_abs(coeffs);
  const double levels_q = quant_levels(bits);
  const std::vector<std::size_t> keep = top_indices(coeffs, kept);

  detail::BitWriter map;
  detail::BitWriter values;
  std::vector<double> rebuilt(padded, 0.0);
  std::size_t next = 0;
  for (std::size_t i = 0; i < padded; ++i) {
    const bool on = next < keep.size() && keep[next] == i;
    map.put(on ? 1u : 0u, 1);
    if (!on) continue;
    ++next;
    const double q = max_abs > 0.0 ? std::round(coeffs[i] / max_abs * levels_q) : 0.0;
    const auto qi = static_cast<std::int64_t>(q);
    values.put(static_cast<std::uint32_t>(qi) & ((1u << bits) - 1u), bits);
    rebuilt[i] = q / levels_q * max_abs;
  }
  std::vector<std::uint8_t> body = map.finish();
  const std::vector<std::uint8_t> packed = values.finish();
  body.insert(body.end(), packed.begin(), packed.end());

  std::vector<std::uint8_t> squeezed = lzw_compress(body);
  const bool use_lzw = squeezed.size() < body.size();
  if (use_lzw) body.swap(squeezed);

  WaveletDecomposition approx = unflatten(rebuilt, levels, s.size(), s.sample_rate_hz());
  std::vector<double> xhat = idwt_padded(approx);
  xhat.resize(s.size());
  const double energy = kernels::sum_squares(s.samples());
  const double err = kernels::sum_sq_diff(s.samples(), xhat);
  const double nmse = energy > 0.0 ? err / energy : (err > 0.0 ? 1.0 : 0.0);

  const std::size_t total = kWaveletHeaderSize + body.size();
  WaveletHeader h;
  h.levels = levels;
  h.quantizer_bits = bits;
  h.lzw = use_lzw;
  h.kept = kept;
  h.original_len = s.size();
  h.padded_len = padded;
  h.sample_rate_hz = s.sample_rate_hz();
  h.max_abs = max_abs;
  h.nmse = nmse;
  h.achieved_ratio = static_cast<double>(s.size() * kSignalBytesPerSample) / static_cast<double>(total);
  h.body_len = body.size();

  detail::ByteWriter w;
  w.u8(static_cast<std::uint8_t>(levels));
  w.u8(static_cast<std::uint8_t>(bits));
  w.u8(use_lzw ? 1 : 0);
  w.u8(0);
  w.u32(static_cast<std::uint32_t>(kept));
  w.u64(h.original_len);
  w.u64(h.padded_len);
  w.f64(h.sample_rate_hz);
  w.f64(h.max_abs);
  w.f64(h.nmse);
  w.f64(h.achieved_ratio);
  w.u64(h.body_len);
  w.bytes(body);
  return {w.take(), h};
}

}  // namespace

void LossyPlan::validate() const {
  if (!(target_ratio > 1.0) || !std::isfinite(target_ratio)) {
    fail(Errc::InvalidArgument, "target ratio must be finite and > 1");
  }
  if (quantizer_bits < 4 || quantizer_bits > 16) fail(Errc::InvalidArgument, "quantizer bits must be in [4, 16]");
}

WaveletHeader read_wavelet_header(std::span<const std::uint8_t> payload) {
  detail::ByteReader r(payload);
  WaveletHeader h;
  h.levels = r.u8();
  h.quantizer_bits = r.u8();
  const std::uint8_t entropy = r.u8();
  const std::uint8_t reserved = r.u8();
  h.kept = r.u32();
  h.original_len = r.u64();
  h.padded_len = r.u64();
  h.sample_rate_hz = r.f64();
  h.max_abs = r.f64();
  h.nmse = r.f64();
  h.achieved_ratio = r.f64();
  h.body_len = r.u64();
  if (entropy > 1 || reserved != 0) fail(Errc::CorruptStream, "bad wavelet entropy flag");
  h.lzw = entropy == 1;
  if (h.quantizer_bits < 4 || h.quantizer_bits > 16) fail(Errc::CorruptStream, "bad quantizer width");
  if (h.levels < 1 || h.levels > 40 || h.padded_len == 0 || h.padded_len % (std::size_t{1} << h.levels) != 0 ||
      (h.padded_len >> h.levels) < 4 || h.padded_len > (std::size_t{1} << 40)) {
    fail(Errc::CorruptStream, "bad wavelet shape");
  }
  if (h.original_len == 0 || h.original_len > h.padded_len || h.kept > h.padded_len) {
    fail(Errc::CorruptStream, "bad wavelet lengths");
  }
  if (!(h.sample_rate_hz > 0.0) || !std::isfinite(h.sample_rate_hz) || !(h.max_abs >= 0.0) ||
      !std::isfinite(h.max_abs)) {
    fail(Errc::CorruptStream, "bad wavelet scalars");
  }
  if (h.body_len != r.remaining()) fail(Errc::CorruptStream, "wavelet body length mismatch");
  return h;
}

std::vector<std::uint8_t> wavelet_encode_budget(const Signal& s, std::size_t byte_budget, unsigned quantizer_bits,
                                                std::size_t levels) {
  return encode(s, byte_budget, quantizer_bits, levels).payload;
}

std::vector<double> wavelet_payload_coefficients(std::span<const std::uint8_t> payload) {
  const WaveletHeader h = read_wavelet_header(payload);
  const auto stored = payload.subspan(kWaveletHeaderSize);
  const std::size_t raw_len = bitmap_bytes(h.padded_len) + value_bytes(h.kept, h.quantizer_bits);
  std::vector<std::uint8_t> body;
  if (h.lzw) {
    body = lzw_expand(stored, raw_len);
  } else {
    body.assign(stored.begin(), stored.end());
  }
  return dequantize_coefficients(body, h.padded_len, h.kept, h.quantizer_bits, h.max_abs);
}

Signal wavelet_decode_payload(std::span<const std::uint8_t> payload) {
  const WaveletHeader h = read_wavelet_header(payload);
  const std::vector<double> c = wavelet_payload_coefficients(payload);
  return idwt(unflatten(c, h.levels, h.original_len, h.sample_rate_hz));
}

Codestream wavelet_compress(const Signal& s, const LossyPlan& plan) {
  plan.validate();
  const std::size_t original_bytes = s.size() * kSignalBytesPerSample;
  const auto budget = static_cast<std::size_t>(std::floor(static_cast<double>(original_bytes) / plan.target_ratio));
  Encoded e = encode(s, budget, plan.quantizer_bits, kDefaultWaveletLevels);
  return Codestream::lossy(Algo::Wavelet, original_bytes, std::move(e.payload));
}

Signal wavelet_decompress(const Codestream& c) {
  if (c.algo != Algo::Wavelet) fail(Errc::UnsupportedAlgo, "stream is not wavelet-coded");
  if (c.integrity != crc32(c.payload)) fail(Errc::ChecksumMismatch, "wavelet payload CRC mismatch");
  Signal s = wavelet_decode_payload(c.payload);
  if (c.original_len != s.size() * kSignalBytesPerSample) fail(Errc::CorruptStream, "original length mismatch");
  return s;
}

}  // namespace sqz
