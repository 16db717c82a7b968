#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sqz {

inline constexpr double kDefaultSampleRateHz = 15360.0;
inline constexpr double kDefaultFundamentalHz = 60.0;

// Sampled waveform in normalized volts.
class Signal {
 public:
  Signal(std::vector<double> samples, double sample_rate_hz);

  std::span<const double> samples() const noexcept { return samples_; }
  double sample_rate_hz() const noexcept { return sample_rate_hz_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double operator[](std::size_t k) const { return samples_[k]; }

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  std::vector<double> samples_;
  double sample_rate_hz_;
};

// 16-bit integer samples; value in volts = sample * scale.
class QuantizedSignal {
 public:
  QuantizedSignal(std::vector<std::int16_t> samples, double scale, double sample_rate_hz);

  std::span<const std::int16_t> samples() const noexcept { return samples_; }
  double scale() const noexcept { return scale_; }
  double sample_rate_hz() const noexcept { return sample_rate_hz_; }
  std::size_t size() const noexcept { return samples_.size(); }

  // Samples as little-endian bytes; the byte view lossless coders consume.
  std::vector<std::uint8_t> to_bytes() const;

  friend bool operator==(const QuantizedSignal&, const QuantizedSignal&) = default;

 private:
  std::vector<std::int16_t> samples_;
  double scale_;
  double sample_rate_hz_;
};

struct SineSpec {
  double amplitude = 1.0;
  double freq_hz = kDefaultFundamentalHz;
  double phase_rad = 0.0;
  double sample_rate_hz = kDefaultSampleRateHz;
};

struct TransientSpec {
  std::size_t period = 1024;  // samples between onsets; first onset at 0
  double amplitude = 0.3;
  double decay = 0.98;  // per-sample envelope factor
  double freq_hz = 1000.0;
};

// amplitude * sin(2*pi*freq*k/fs + phase). Every generator and the hybrid
// coder evaluate the model through this one function, so generator-true
// parameters cancel exactly.
double sine_sample(double amplitude, double freq_hz, double phase_rad, double sample_rate_hz,
                   std::size_t k) noexcept;

Signal gen_sine(const SineSpec& spec, std::size_t n);

// Fundamental amplitude multiplied by dip_factor over [dip_start, dip_end).
Signal gen_voltage_dip(const SineSpec& base, std::size_t dip_start, std::size_t dip_end,
                       double dip_factor, std::size_t n);

// Fundamental plus damped oscillations launched every transient.period samples.
Signal gen_transients(const SineSpec& base, const TransientSpec& transient, std::size_t n);

// Onset sample indices used by gen_transients for a record of n samples.
std::vector<std::size_t> transient_onsets(const TransientSpec& transient, std::size_t n);

// Adds seeded Gaussian noise rescaled after drawing so the realized SNR is
// exactly target_snr_db.
Signal add_noise(const Signal& s, double target_snr_db, std::uint64_t seed);

// Round half away from zero; throws Overflow outside the int16 range.
QuantizedSignal quantize(const Signal& s, double scale);
Signal dequantize(const QuantizedSignal& q);

// Deterministic 64-bit linear congruential generator (Knuth MMIX constants)
// with Box-Muller normal variates. Part of the reproducibility contract.
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed) noexcept;

  std::uint64_t next_u64() noexcept;
  // Uniform in [0, 1) with 53 random bits.
  double next_unit() noexcept;
  double next_gaussian() noexcept;

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace sqz
