#include "sqz/signal.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sqz/error.hpp"
#include "sqz/kernels.hpp"

namespace sqz {
namespace {

void check_rate(double fs) {
  if (!(fs > 0.0) || !std::isfinite(fs)) fail(Errc::InvalidArgument, "sample rate must be positive");
}

void check_nyquist(double freq_hz, double fs) {
  if (!(freq_hz > 0.0) || !(freq_hz < fs / 2.0)) {
    fail(Errc::NyquistViolation,
         "frequency " + std::to_string(freq_hz) + " Hz not in (0, " + std::to_string(fs / 2.0) + ")");
  }
}

void check_sine(const SineSpec& spec, std::size_t n) {
  check_rate(spec.sample_rate_hz);
  if (n == 0) fail(Errc::EmptySignal, "n must be at least 1");
  if (!(spec.amplitude >= 0.0) || !std::isfinite(spec.amplitude)) {
    fail(Errc::InvalidArgument, "amplitude must be finite and non-negative");
  }
  if (!std::isfinite(spec.phase_rad)) fail(Errc::InvalidArgument, "phase must be finite");
  check_nyquist(spec.freq_hz, spec.sample_rate_hz);
}

}  // namespace

Signal::Signal(std::vector<double> samples, double sample_rate_hz)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz) {
  if (samples_.empty()) fail(Errc::EmptySignal, "signal has no samples");
  check_rate(sample_rate_hz_);
  for (double v : samples_) {
    if (!std::isfinite(v)) fail(Errc::InvalidArgument, "signal sample is not finite");
  }
}

QuantizedSignal::QuantizedSignal(std::vector<std::int16_t> samples, double scale, double sample_rate_hz)
    : samples_(std::move(samples)), scale_(scale), sample_rate_hz_(sample_rate_hz) {
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) fail(Errc::InvalidArgument, "scale must be positive");
  check_rate(sample_rate_hz_);
}

std::vector<std::uint8_t> QuantizedSignal::to_bytes() const {
  std::vector<std::uint8_t> out;
  out.reserve(samples_.size() * 2);
  for (std::int16_t v : samples_) {
    const auto u = static_cast<std::uint16_t>(v);
    out.push_back(static_cast<std::uint8_t>(u & 0xFF));
    out.push_back(static_cast<std::uint8_t>(u >> 8));
  }
  return out;
}

double sine_sample(double amplitude, double freq_hz, double phase_rad, double sample_rate_hz,
                   std::size_t k) noexcept {
  // Reduce to a fraction of a cycle first so long records stay periodic to
  // rounding rather than drifting with the argument magnitude.
  double cycles = freq_hz * static_cast<double>(k) / sample_rate_hz;
  cycles -= std::floor(cycles);
  return amplitude * std::sin(2.0 * std::numbers::pi * cycles + phase_rad);
}

Signal gen_sine(const SineSpec& spec, std::size_t n) {
  check_sine(spec, n);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = sine_sample(spec.amplitude, spec.freq_hz, spec.phase_rad, spec.sample_rate_hz, k);
  }
  return Signal(std::move(out), spec.sample_rate_hz);
}

Signal gen_voltage_dip(const SineSpec& base, std::size_t dip_start, std::size_t dip_end,
                       double dip_factor, std::size_t n) {
  check_sine(base, n);
  if (!(dip_start < dip_end) || dip_end > n) {
    fail(Errc::BadInterval, "dip interval [" + std::to_string(dip_start) + ", " +
                                std::to_string(dip_end) + ") invalid for n=" + std::to_string(n));
  }
  if (!(dip_factor > 0.0) || dip_factor > 1.0) fail(Errc::InvalidArgument, "dip factor must be in (0, 1]");
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double a = (k >= dip_start && k < dip_end) ? base.amplitude * dip_factor : base.amplitude;
    out[k] = sine_sample(a, base.freq_hz, base.phase_rad, base.sample_rate_hz, k);
  }
  return Signal(std::move(out), base.sample_rate_hz);
}

std::vector<std::size_t> transient_onsets(const TransientSpec& transient, std::size_t n) {
  std::vector<std::size_t> onsets;
  if (transient.period == 0) return onsets;
  for (std::size_t k0 = 0; k0 < n; k0 += transient.period) onsets.push_back(k0);
  return onsets;
}

Signal gen_transients(const SineSpec& base, const TransientSpec& transient, std::size_t n) {
  check_sine(base, n);
  if (transient.period < 1) fail(Errc::InvalidArgument, "transient period must be >= 1");
  if (!(transient.decay > 0.0 && transient.decay < 1.0)) {
    fail(Errc::InvalidArgument, "transient decay must be in (0, 1)");
  }
  if (!std::isfinite(transient.amplitude)) fail(Errc::InvalidArgument, "transient amplitude not finite");
  check_nyquist(transient.freq_hz, base.sample_rate_hz);

  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = sine_sample(base.amplitude, base.freq_hz, base.phase_rad, base.sample_rate_hz, k);
  }
  if (transient.amplitude != 0.0) {
    for (std::size_t k0 : transient_onsets(transient, n)) {
      for (std::size_t k = k0; k < n; ++k) {
        const double envelope =
            transient.amplitude * std::pow(transient.decay, static_cast<double>(k - k0));
        if (std::fabs(envelope) < 1e-300) break;
        out[k] += sine_sample(envelope, transient.freq_hz, 0.0, base.sample_rate_hz, k - k0);
      }
    }
  }
  return Signal(std::move(out), base.sample_rate_hz);
}

NoiseSource::NoiseSource(std::uint64_t seed) noexcept : state_(seed) {}

std::uint64_t NoiseSource::next_u64() noexcept {
  state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
  return state_;
}

double NoiseSource::next_unit() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double NoiseSource::next_gaussian() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - next_unit();  // (0, 1]
  const double u2 = next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Signal add_noise(const Signal& s, double target_snr_db, std::uint64_t seed) {
  if (!std::isfinite(target_snr_db)) fail(Errc::InvalidArgument, "target SNR must be finite");
  const double signal_energy = kernels::sum_squares(s.samples());
  if (!(signal_energy > 0.0)) fail(Errc::ZeroSignal, "signal has zero energy");

  NoiseSource rng(seed);
  std::vector<double> noise(s.size());
  for (double& w : noise) w = rng.next_gaussian();
  const double noise_energy = kernels::sum_squares(noise);
  if (!(noise_energy > 0.0)) fail(Errc::ZeroSignal, "drawn noise has zero energy");

  const double wanted = signal_energy / std::pow(10.0, target_snr_db / 10.0);
  const double gain = std::sqrt(wanted / noise_energy);
  std::vector<double> out(s.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = s[k] + gain * noise[k];
  return Signal(std::move(out), s.sample_rate_hz());
}

QuantizedSignal quantize(const Signal& s, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) fail(Errc::InvalidArgument, "scale must be positive");
  std::vector<std::int16_t> out(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double r = std::round(s[k] / scale);
    if (r < -32768.0 || r > 32767.0) {
      fail(Errc::Overflow, "sample " + std::to_string(k) + " quantizes outside the 16-bit range");
    }
    out[k] = static_cast<std::int16_t>(r);
  }
  return QuantizedSignal(std::move(out), scale, s.sample_rate_hz());
}

Signal dequantize(const QuantizedSignal& q) {
  if (q.size() == 0) fail(Errc::EmptySignal, "quantized signal has no samples");
  std::vector<double> out(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) out[k] = static_cast<double>(q.samples()[k]) * q.scale();
  return Signal(std::move(out), q.sample_rate_hz());
}

}  // namespace sqz
