#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sqz/codecs.hpp"
#include "sqz/signal.hpp"

namespace sqz {

// Lossless predictive coder for periodic signals. The dictionary holds the
// last K raw periods. At every period boundary each stored period is scored
// by the sum of absolute residuals it would have produced predicting the
// period that just ended (scoring the period j back with lag j); the
// best-scoring lag then predicts the whole next period. Ties go to the most
// recent period.

struct PeriodicModel {
  std::size_t period = 0;
  std::size_t templates = 4;
  std::size_t sample_count = 0;
  unsigned sample_width = 16;
};

struct PeriodEstimate {
  std::size_t period = 0;
  double peak = 0.0;  // normalized autocorrelation at `period`
};

inline constexpr std::size_t kDefaultMinPeriod = 8;
inline constexpr std::size_t kDefaultTemplates = 4;
inline constexpr std::size_t kMaxTemplates = 256;
inline constexpr double kPeriodicityThreshold = 0.5;

// Lag in [p_min, p_max] maximizing the mean-removed normalized
// autocorrelation; smallest lag on ties. Throws NoPeriodicity when the peak
// is below 0.5 or undefined, SignalTooShort when the range does not fit.
PeriodEstimate estimate_period(const QuantizedSignal& q, std::size_t p_min, std::size_t p_max);
PeriodEstimate estimate_period(const QuantizedSignal& q);

struct PredictiveParams {
  std::optional<std::size_t> period;  // skip estimation when set
  std::size_t templates = kDefaultTemplates;
  std::size_t p_min = kDefaultMinPeriod;
  std::optional<std::size_t> p_max;  // defaults to len / 2
};

// Coder internals exposed for plotting and tests.
struct PredictiveAnalysis {
  PeriodicModel model;
  // First-order deltas for the first period, prediction residuals after it.
  std::vector<std::int32_t> residuals;
  // Lag (1 = most recent stored period) chosen at each period boundary.
  std::vector<std::size_t> selected_lags;
};

PredictiveAnalysis predictive_analyze(const QuantizedSignal& q, std::size_t period, std::size_t templates);

// Payload: u32 period | u32 templates | u64 sample_count | f64 scale |
// f64 sample_rate_hz | u64 residual_bytes | LZW(zig-zag varint residuals).
inline constexpr std::size_t kPredictiveHeaderSize = 40;

// Integrity of a predictive stream: CRC-32 over the 16-bit sample bytes
// followed by the 40-byte payload header.
std::uint32_t predictive_integrity(const QuantizedSignal& q, std::span<const std::uint8_t> payload);

Codestream predictive_encode(const QuantizedSignal& q, const PredictiveParams& params = {});
QuantizedSignal predictive_decode(const Codestream& c);

PeriodicModel read_predictive_model(const Codestream& c);

inline std::uint32_t zigzag(std::int32_t r) noexcept {
  return r >= 0 ? static_cast<std::uint32_t>(r) * 2u : static_cast<std::uint32_t>(-(static_cast<std::int64_t>(r) + 1)) * 2u + 1u;
}
inline std::int32_t unzigzag(std::uint32_t z) noexcept {
  return (z & 1u) ? -static_cast<std::int32_t>(z >> 1) - 1 : static_cast<std::int32_t>(z >> 1);
}

}  // namespace sqz
