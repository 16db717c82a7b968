#include "sqz/hybrid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "byteio.hpp"
#include "sqz/error.hpp"
#include "sqz/kernels.hpp"

namespace sqz {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW's planner (plan creation and destruction) is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

// |X[k]| for k in [0, N/2] of the zero-padded real transform.
std::vector<double> padded_magnitudes(std::span<const double> x, std::size_t fft_len) {
  std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * fft_len)));
  const std::size_t bins = fft_len / 2 + 1;
  std::unique_ptr<fftw_complex, FftwFree> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins)));
  if (!in || !out) fail(Errc::InvalidArgument, "FFT buffer allocation failed");

  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(fft_len), in.get(), out.get(), FFTW_ESTIMATE);
  }
  std::fill(in.get(), in.get() + fft_len, 0.0);
  std::copy(x.begin(), x.end(), in.get());
  fftw_execute(plan);
  std::vector<double> mag(bins);
  for (std::size_t k = 0; k < bins; ++k) mag[k] = std::hypot(out.get()[k][0], out.get()[k][1]);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return mag;
}

double median(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

double coarse_frequency(std::span<const double> x, double fs, const SearchBand& band) {
  const std::size_t fft_len = std::bit_ceil(kFftPadFactor * x.size());
  const std::vector<double> mag = padded_magnitudes(x, fft_len);
  const double bin_hz = fs / static_cast<double>(fft_len);

  const auto first = static_cast<std::size_t>(std::ceil(band.lo_hz / bin_hz));
  const auto last = std::min(mag.size() - 1, static_cast<std::size_t>(std::floor(band.hi_hz / bin_hz)));
  if (first > last || first == 0) fail(Errc::BandEmpty, "search band contains no FFT bins");

  std::vector<double> in_band(mag.begin() + static_cast<std::ptrdiff_t>(first),
                              mag.begin() + static_cast<std::ptrdiff_t>(last + 1));
  std::size_t peak = first;
  for (std::size_t k = first; k <= last; ++k) {
    if (mag[k] > mag[peak]) peak = k;
  }
  const double med = median(in_band);
  if (!(mag[peak] > 0.0) || mag[peak] < kPeakToMedianMin * med) {
    fail(Errc::NoFundamental, "no spectral peak at least 3x the band median");
  }

  double offset = 0.0;
  if (peak + 1 < mag.size() && mag[peak - 1] > 0.0 && mag[peak + 1] > 0.0) {
    const double a = std::log(mag[peak - 1]);
    const double b = std::log(mag[peak]);
    const double c = std::log(mag[peak + 1]);
    const double denom = a - 2.0 * b + c;
    if (denom < 0.0) offset = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
  }
  return (static_cast<double>(peak) + offset) * bin_hz;
}

// Basis values matching sine_sample: sin and cos of the reduced cycle phase.
void basis(double f, double fs, std::size_t begin, std::size_t end, std::vector<double>& sn,
           std::vector<double>& cs) {
  sn.resize(end - begin);
  cs.resize(end - begin);
  for (std::size_t k = begin; k < end; ++k) {
    double cycles = f * static_cast<double>(k) / fs;
    cycles -= std::floor(cycles);
    sn[k - begin] = std::sin(kTwoPi * cycles);
    cs[k - begin] = std::cos(kTwoPi * cycles);
  }
}

struct Fit {
  double a = 0.0;  // sine coefficient, A*cos(phase)
  double b = 0.0;  // cosine coefficient, A*sin(phase)
  double f = 0.0;
  double err = 0.0;
};

bool solve(std::array<std::array<double, 3>, 3> m, std::array<double, 3> r, std::size_t dim,
           std::array<double, 3>& out) {
  for (std::size_t c = 0; c < dim; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < dim; ++i) {
      if (std::fabs(m[i][c]) > std::fabs(m[piv][c])) piv = i;
    }
    if (!(std::fabs(m[piv][c]) > 0.0)) return false;
    std::swap(m[piv], m[c]);
    std::swap(r[piv], r[c]);
    for (std::size_t i = c + 1; i < dim; ++i) {
      const double factor = m[i][c] / m[c][c];
      for (std::size_t j = c; j < dim; ++j) m[i][j] -= factor * m[c][j];
      r[i] -= factor * r[c];
    }
  }
  for (std::size_t c = dim; c-- > 0;) {
    double v = r[c];
    for (std::size_t j = c + 1; j < dim; ++j) v -= m[c][j] * out[j];
    out[c] = v / m[c][c];
  }
  return true;
}

Fit linear_fit(std::span<const double> x, double f, double fs, std::size_t begin, std::size_t end) {
  std::vector<double> sn;
  std::vector<double> cs;
  basis(f, fs, begin, end, sn, cs);
  const auto seg = x.subspan(begin, end - begin);
  std::array<std::array<double, 3>, 3> m{};
  m[0][0] = kernels::dot(sn, sn);
  m[0][1] = m[1][0] = kernels::dot(sn, cs);
  m[1][1] = kernels::dot(cs, cs);
  std::array<double, 3> sol{};
  Fit fit;
  fit.f = f;
  if (solve(m, {kernels::dot(sn, seg), kernels::dot(cs, seg), 0.0}, 2, sol)) {
    fit.a = sol[0];
    fit.b = sol[1];
  }
  std::vector<double> model(seg.size());
  for (std::size_t i = 0; i < seg.size(); ++i) model[i] = fit.a * sn[i] + fit.b * cs[i];
  fit.err = kernels::sum_sq_diff(seg, model);
  return fit;
}

// Gauss-Newton on (a, b, f) starting from the interpolated spectral peak.
Fit refine(std::span<const double> x, double f0, double fs, std::size_t begin, std::size_t end,
           const SearchBand& band) {
  Fit best = linear_fit(x, f0, fs, begin, end);
  const auto seg = x.subspan(begin, end - begin);
  std::vector<double> sn;
  std::vector<double> cs;
  std::vector<double> df(seg.size());
  std::vector<double> resid(seg.size());
  for (int iter = 0; iter < 50; ++iter) {
    basis(best.f, fs, begin, end, sn, cs);
    for (std::size_t i = 0; i < seg.size(); ++i) {
      const double t = kTwoPi * static_cast<double>(begin + i) / fs;
      df[i] = t * (best.a * cs[i] - best.b * sn[i]);
      resid[i] = seg[i] - (best.a * sn[i] + best.b * cs[i]);
    }
    std::array<std::array<double, 3>, 3> m{};
    const std::array<const std::vector<double>*, 3> cols{&sn, &cs, &df};
    std::array<double, 3> rhs{};
    for (std::size_t i = 0; i < 3; ++i) {
      rhs[i] = kernels::dot(*cols[i], resid);
      for (std::size_t j = i; j < 3; ++j) m[i][j] = m[j][i] = kernels::dot(*cols[i], *cols[j]);
    }
    std::array<double, 3> step{};
    if (!solve(m, rhs, 3, step)) break;

    bool improved = false;
    for (double scale = 1.0; scale > 1e-6; scale *= 0.5) {
      const double f = best.f + scale * step[2];
      if (!(f >= band.lo_hz && f <= band.hi_hz)) continue;
      Fit trial = linear_fit(x, f, fs, begin, end);
      if (trial.err < best.err) {
        best = trial;
        improved = true;
        break;
      }
    }
    if (!improved || std::fabs(step[2]) <= 1e-12 * best.f) break;
  }
  return best;
}

FundamentalParams to_params(const Fit& fit, std::size_t begin, std::size_t end) {
  FundamentalParams p;
  p.begin_sample = begin;
  p.end_sample = end;
  p.amplitude = std::hypot(fit.a, fit.b);
  p.freq_hz = fit.f;
  double phase = std::atan2(fit.b, fit.a);
  if (phase <= -std::numbers::pi) phase = std::numbers::pi;
  p.phase_rad = phase;
  return p;
}

// Longest run of whole cycles whose RMS is within 3 dB of the median cycle.
std::pair<std::size_t, std::size_t> dominant_segment(std::span<const double> x, double f, double fs) {
  const auto cycle = static_cast<std::size_t>(std::llround(fs / f));
  const std::size_t count = cycle == 0 ? 0 : x.size() / cycle;
  if (count < 2) return {0, x.size()};
  std::vector<double> rms(count);
  for (std::size_t c = 0; c < count; ++c) {
    rms[c] = std::sqrt(kernels::sum_squares(x.subspan(c * cycle, cycle)) / static_cast<double>(cycle));
  }
  const double med = median(rms);
  const double lo = med * std::pow(10.0, -3.0 / 20.0);
  const double hi = med * std::pow(10.0, 3.0 / 20.0);
  std::size_t best_start = 0;
  std::size_t best_len = 0;
  for (std::size_t c = 0; c < count;) {
    if (!(rms[c] >= lo && rms[c] <= hi)) {
      ++c;
      continue;
    }
    std::size_t e = c;
    while (e < count && rms[e] >= lo && rms[e] <= hi) ++e;
    if (e - c > best_len) {
      best_start = c;
      best_len = e - c;
    }
    c = e;
  }
  if (best_len == count || best_len < kMinCycles) return {0, x.size()};
  const std::size_t begin = best_start * cycle;
  const std::size_t end = best_start + best_len == count ? x.size() : (best_start + best_len) * cycle;
  return {begin, end};
}

void check_params(const FundamentalParams& p, std::size_t n, double fs) {
  if (!(p.begin_sample < p.end_sample) || p.end_sample > n) {
    fail(Errc::BadInterval, "fundamental interval outside the signal");
  }
  if (!(p.freq_hz > 0.0 && p.freq_hz < fs / 2.0)) fail(Errc::NyquistViolation, "fundamental frequency out of range");
  if (!(p.amplitude >= 0.0) || !std::isfinite(p.amplitude) || !std::isfinite(p.phase_rad)) {
    fail(Errc::InvalidArgument, "fundamental amplitude/phase not finite");
  }
}

}  // namespace

FundamentalParams estimate_fundamental(const Signal& s, const FundamentalOptions& options) {
  const double fs = s.sample_rate_hz();
  const SearchBand& band = options.band;
  if (!(band.lo_hz > 0.0) || !(band.hi_hz < fs / 2.0) || !std::isfinite(band.lo_hz)) {
    fail(Errc::InvalidArgument, "search band must lie within (0, fs/2)");
  }
  if (!(band.lo_hz < band.hi_hz)) fail(Errc::BandEmpty, "search band is empty");
  const double needed = static_cast<double>(kMinCycles) * fs / band.lo_hz;
  if (static_cast<double>(s.size()) < needed) {
    fail(Errc::SignalTooShort, "need at least " + std::to_string(static_cast<std::size_t>(std::ceil(needed))) +
                                   " samples for 4 cycles at the band's low edge");
  }

  const auto x = s.samples();
  const double f0 = coarse_frequency(x, fs, band);
  Fit fit = refine(x, f0, fs, 0, x.size(), band);
  std::size_t begin = 0;
  std::size_t end = x.size();
  if (options.segment) {
    std::tie(begin, end) = dominant_segment(x, fit.f, fs);
    if (begin != 0 || end != x.size()) fit = refine(x, fit.f, fs, begin, end, band);
  }
  return to_params(fit, begin, end);
}

Signal synthesize_fundamental(const FundamentalParams& p, std::size_t n, double sample_rate_hz) {
  check_params(p, n, sample_rate_hz);
  std::vector<double> out(n, 0.0);
  for (std::size_t k = p.begin_sample; k < p.end_sample; ++k) {
    out[k] = sine_sample(p.amplitude, p.freq_hz, p.phase_rad, sample_rate_hz, k);
  }
  return Signal(std::move(out), sample_rate_hz);
}

Signal subtract_fundamental(const Signal& s, const FundamentalParams& p) {
  check_params(p, s.size(), s.sample_rate_hz());
  std::vector<double> out(s.samples().begin(), s.samples().end());
  for (std::size_t k = p.begin_sample; k < p.end_sample; ++k) {
    out[k] -= sine_sample(p.amplitude, p.freq_hz, p.phase_rad, s.sample_rate_hz(), k);
  }
  return Signal(std::move(out), s.sample_rate_hz());
}

Codestream hybrid_encode(const Signal& s, const LossyPlan& plan, const HybridOptions& options) {
  plan.validate();
  const std::size_t original_bytes = s.size() * kSignalBytesPerSample;
  const auto budget = static_cast<std::size_t>(std::floor(static_cast<double>(original_bytes) / plan.target_ratio));
  if (budget < kHybridHeaderSize) {
    fail(Errc::RatioUnreachable, "budget of " + std::to_string(budget) + " bytes cannot hold the parameters");
  }

  const FundamentalParams p = estimate_fundamental(s, options.fundamental);
  const Signal residue = subtract_fundamental(s, p);
  const double energy = kernels::sum_squares(s.samples());
  const bool keep_residue = kernels::sum_squares(residue.samples()) > kResidueFloor * energy;

  detail::ByteWriter w;
  w.u8(1);
  w.u8(keep_residue ? 1 : 0);
  w.u16(0);
  w.u64(p.begin_sample);
  w.u64(p.end_sample);
  w.u64(s.size());
  w.f64(p.amplitude);
  w.f64(p.freq_hz);
  w.f64(p.phase_rad);
  w.f64(s.sample_rate_hz());
  if (keep_residue) {
    w.bytes(wavelet_encode_budget(residue, budget - kHybridHeaderSize, plan.quantizer_bits, options.wavelet_levels));
  }
  return Codestream::lossy(Algo::Hybrid, original_bytes, w.take());
}

HybridHeader read_hybrid_header(std::span<const std::uint8_t> payload) {
  detail::ByteReader r(payload);
  if (r.u8() != 1) fail(Errc::UnsupportedVersion, "unknown hybrid parameter block version");
  const std::uint8_t flags = r.u8();
  if ((flags & ~1u) != 0 || r.u16() != 0) fail(Errc::CorruptStream, "bad hybrid flags");
  HybridHeader h;
  h.has_residue = (flags & 1u) != 0;
  h.params.begin_sample = r.u64();
  h.params.end_sample = r.u64();
  h.sample_count = r.u64();
  h.params.amplitude = r.f64();
  h.params.freq_hz = r.f64();
  h.params.phase_rad = r.f64();
  h.sample_rate_hz = r.f64();
  if (h.sample_count == 0 || h.sample_count > (std::size_t{1} << 40) || !(h.sample_rate_hz > 0.0) ||
      !std::isfinite(h.sample_rate_hz)) {
    fail(Errc::CorruptStream, "bad hybrid framing");
  }
  try {
    check_params(h.params, h.sample_count, h.sample_rate_hz);
  } catch (const Error& e) {
    fail(Errc::CorruptStream, std::string("bad fundamental parameters: ") + e.what());
  }
  if (!h.has_residue && r.remaining() != 0) fail(Errc::CorruptStream, "trailing bytes after parameters");
  return h;
}

Signal hybrid_decode(const Codestream& c) {
  if (c.algo != Algo::Hybrid) fail(Errc::UnsupportedAlgo, "stream is not hybrid-coded");
  if (c.integrity != crc32(c.payload)) fail(Errc::ChecksumMismatch, "hybrid payload CRC mismatch");
  const HybridHeader h = read_hybrid_header(c.payload);
  if (c.original_len != h.sample_count * kSignalBytesPerSample) fail(Errc::CorruptStream, "original length mismatch");
  Signal fundamental = synthesize_fundamental(h.params, h.sample_count, h.sample_rate_hz);
  if (!h.has_residue) return fundamental;

  const Signal residue = wavelet_decode_payload(std::span(c.payload).subspan(kHybridHeaderSize));
  if (residue.size() != h.sample_count || residue.sample_rate_hz() != h.sample_rate_hz) {
    fail(Errc::CorruptStream, "residue shape does not match the parameter block");
  }
  std::vector<double> out(h.sample_count);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = fundamental[k] + residue[k];
  return Signal(std::move(out), h.sample_rate_hz);
}

}  // namespace sqz
