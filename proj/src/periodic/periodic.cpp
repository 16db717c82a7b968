#include "sqz/periodic.hpp"

#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "byteio.hpp"
#include "sqz/error.hpp"
#include "sqz/kernels.hpp"

namespace sqz {
namespace {

void check_model(std::size_t period, std::size_t templates, std::size_t n, Errc code) {
  if (period < 2 || period > n / 2) {
    fail(code, "period " + std::to_string(period) + " outside [2, " + std::to_string(n / 2) + "]");
  }
  if (templates < 1 || templates > kMaxTemplates) {
    fail(code, "template count " + std::to_string(templates) + " outside [1, " + std::to_string(kMaxTemplates) + "]");
  }
}

// Chooses the lag for the period starting at `boundary` from the history in
// x[0, boundary).
std::size_t select_lag(std::span<const std::int16_t> x, std::size_t boundary, std::size_t period,
                       std::size_t templates) {
  const std::size_t completed = boundary / period;  // whole periods seen
  const std::size_t usable = std::min(templates, completed - 1);
  if (usable == 0) return 1;
  const auto last = x.subspan(boundary - period, period);
  std::size_t best_lag = 1;
  std::int64_t best_score = std::numeric_limits<std::int64_t>::max();
  for (std::size_t lag = 1; lag <= usable; ++lag) {
    const auto candidate = x.subspan(boundary - period - lag * period, period);
    const std::int64_t score = kernels::sum_abs_diff(last, candidate);
    if (score < best_score) {
      best_score = score;
      best_lag = lag;
    }
  }
  return best_lag;
}

}  // namespace

PeriodEstimate estimate_period(const QuantizedSignal& q, std::size_t p_min, std::size_t p_max) {
  const std::size_t n = q.size();
  if (p_min < 2 || p_min >= p_max) fail(Errc::InvalidArgument, "period search needs 2 <= p_min < p_max");
  if (p_max > n / 2) {
    fail(Errc::SignalTooShort, std::to_string(n) + " samples cannot show lag " + std::to_string(p_max));
  }
  double mean = 0.0;
  for (std::int16_t v : q.samples()) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = q.samples()[k] - mean;

  const std::span<const double> xs(x);
  PeriodEstimate best;
  bool found = false;
  for (std::size_t lag = p_min; lag <= p_max; ++lag) {
    const auto head = xs.subspan(lag);
    const auto tail = xs.first(n - lag);
    const double e_head = kernels::sum_squares(head);
    const double e_tail = kernels::sum_squares(tail);
    if (!(e_head > 0.0) || !(e_tail > 0.0)) continue;
    const double c = kernels::dot(head, tail) / std::sqrt(e_head * e_tail);
    if (!found || c > best.peak) {
      best = {lag, c};
      found = true;
    }
  }
  if (!found) fail(Errc::NoPeriodicity, "autocorrelation undefined (signal has no variation)");
  if (best.peak < kPeriodicityThreshold) {
    fail(Errc::NoPeriodicity, "autocorrelation peak " + std::to_string(best.peak) + " below 0.5");
  }
  return best;
}

PeriodEstimate estimate_period(const QuantizedSignal& q) {
  const std::size_t n = q.size();
  if (n / 2 <= kDefaultMinPeriod) fail(Errc::SignalTooShort, "need more than 16 samples to estimate a period");
  return estimate_period(q, kDefaultMinPeriod, n / 2);
}

PredictiveAnalysis predictive_analyze(const QuantizedSignal& q, std::size_t period, std::size_t templates) {
  const std::size_t n = q.size();
  check_model(period, templates, n, Errc::InvalidArgument);
  const auto x = q.samples();

  PredictiveAnalysis out;
  out.model = {period, templates, n, 16};
  out.residuals.resize(n);
  std::int32_t prev = 0;
  for (std::size_t k = 0; k < period; ++k) {
    out.residuals[k] = x[k] - prev;
    prev = x[k];
  }
  for (std::size_t boundary = period; boundary < n; boundary += period) {
    const std::size_t lag = select_lag(x, boundary, period, templates);
    out.selected_lags.push_back(lag);
    const std::size_t stop = std::min(n, boundary + period);
    for (std::size_t k = boundary; k < stop; ++k) out.residuals[k] = x[k] - x[k - lag * period];
  }
  return out;
}

Codestream predictive_encode(const QuantizedSignal& q, const PredictiveParams& params) {
  std::size_t period;
  if (params.period) {
    period = *params.period;
  } else {
    const std::size_t p_max = params.p_max.value_or(q.size() / 2);
    period = estimate_period(q, params.p_min, p_max).period;
  }
  const PredictiveAnalysis analysis = predictive_analyze(q, period, params.templates);

  detail::ByteWriter varints;
  for (std::int32_t r : analysis.residuals) varints.varint(zigzag(r));
  const std::vector<std::uint8_t> residual_bytes = varints.take();

  detail::ByteWriter w;
  w.u32(static_cast<std::uint32_t>(period));
  w.u32(static_cast<std::uint32_t>(params.templates));
  w.u64(q.size());
  w.f64(q.scale());
  w.f64(q.sample_rate_hz());
  w.u64(residual_bytes.size());
  std::vector<std::uint8_t> payload = w.take();
  Codestream c = Codestream::lossless(Algo::Predictive, q.to_bytes(), {});
  c.integrity = predictive_integrity(q, payload);
  const std::vector<std::uint8_t> codes = lzw_compress(residual_bytes);
  payload.insert(payload.end(), codes.begin(), codes.end());
  c.payload = std::move(payload);
  return c;
}

std::uint32_t predictive_integrity(const QuantizedSignal& q, std::span<const std::uint8_t> payload) {
  if (payload.size() < kPredictiveHeaderSize) fail(Errc::CorruptStream, "truncated predictive header");
  std::vector<std::uint8_t> covered = q.to_bytes();
  covered.insert(covered.end(), payload.begin(), payload.begin() + kPredictiveHeaderSize);
  return crc32(covered);
}

PeriodicModel read_predictive_model(const Codestream& c) {
  if (c.algo != Algo::Predictive) fail(Errc::UnsupportedAlgo, "not a predictive stream");
  detail::ByteReader r(c.payload);
  PeriodicModel m;
  m.period = r.u32();
  m.templates = r.u32();
  m.sample_count = static_cast<std::size_t>(r.u64());
  return m;
}

QuantizedSignal predictive_decode(const Codestream& c) {
  if (c.algo != Algo::Predictive) fail(Errc::UnsupportedAlgo, "not a predictive stream");
  detail::ByteReader r(c.payload);
  const std::size_t period = r.u32();
  const std::size_t templates = r.u32();
  const std::uint64_t count = r.u64();
  const double scale = r.f64();
  const double rate = r.f64();
  const std::uint64_t residual_len = r.u64();
  if (count * 2 != c.original_len) fail(Errc::CorruptStream, "sample count disagrees with original_len");
  if (count > (std::uint64_t{1} << 40)) fail(Errc::CorruptStream, "implausible sample count");
  const auto n = static_cast<std::size_t>(count);
  check_model(period, templates, n, Errc::CorruptStream);
  if (!(scale > 0.0) || !std::isfinite(scale) || !(rate > 0.0) || !std::isfinite(rate)) {
    fail(Errc::CorruptStream, "bad scale or sample rate");
  }
  // Each residual takes one to three varint bytes.
  if (residual_len < count || residual_len > 3 * count) fail(Errc::CorruptStream, "bad residual length");

  const std::vector<std::uint8_t> residual_bytes = lzw_expand(r.rest(), residual_len);
  detail::ByteReader vr(residual_bytes);
  std::vector<std::int16_t> x(n);
  auto store = [&](std::size_t k, std::int64_t v) {
    if (v < -32768 || v > 32767) fail(Errc::CorruptStream, "reconstructed sample leaves the 16-bit range");
    x[k] = static_cast<std::int16_t>(v);
  };
  std::int64_t prev = 0;
  for (std::size_t k = 0; k < period; ++k) {
    prev += unzigzag(vr.varint());
    store(k, prev);
  }
  const std::span<const std::int16_t> xs(x);
  for (std::size_t boundary = period; boundary < n; boundary += period) {
    const std::size_t lag = select_lag(xs, boundary, period, templates);
    const std::size_t stop = std::min(n, boundary + period);
    for (std::size_t k = boundary; k < stop; ++k) {
      store(k, std::int64_t{x[k - lag * period]} + unzigzag(vr.varint()));
    }
  }
  if (vr.remaining() != 0) fail(Errc::CorruptStream, "residual stream has trailing bytes");

  QuantizedSignal out(std::move(x), scale, rate);
  if (predictive_integrity(out, c.payload) != c.integrity) {
    fail(Errc::ChecksumMismatch, "decoded samples fail the CRC check");
  }
  return out;
}

}  // namespace sqz
