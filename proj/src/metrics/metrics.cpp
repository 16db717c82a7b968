#include "sqz/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "sqz/error.hpp"
#include "sqz/kernels.hpp"

namespace sqz {

RatioReport compression_ratio(std::uint64_t original_bytes, std::uint64_t compressed_bytes) {
  if (compressed_bytes == 0) fail(Errc::ZeroDenominator, "compressed size is zero");
  const double r = static_cast<double>(original_bytes) / static_cast<double>(compressed_bytes);
  return {r, format_ratio(r)};
}

std::string format_ratio(double ratio) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f:1", ratio);
  return buf;
}

DistortionReport distortion(std::span<const double> x, std::span<const double> xhat) {
  if (x.size() != xhat.size()) fail(Errc::LengthMismatch, "signals differ in length");
  const double ref = kernels::sum_squares(x);
  if (!(ref > 0.0)) fail(Errc::ZeroReference, "reference signal has zero energy");
  DistortionReport r;
  r.nmse = kernels::sum_sq_diff(x, xhat) / ref;
  r.mse_db = r.nmse > 0.0 ? 10.0 * std::log10(r.nmse) : -std::numeric_limits<double>::infinity();
  r.prd_pct = 100.0 * std::sqrt(r.nmse);
  r.snr_db = 0.0 - r.mse_db;
  return r;
}

DistortionReport distortion(const Signal& x, const Signal& xhat) { return distortion(x.samples(), xhat.samples()); }

nlohmann::ordered_json json_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

nlohmann::ordered_json to_json(const DistortionReport& r) {
  nlohmann::ordered_json j;
  j["nmse"] = json_number(r.nmse);
  j["mse_db"] = json_number(r.mse_db);
  j["prd_pct"] = json_number(r.prd_pct);
  j["snr_db"] = json_number(r.snr_db);
  return j;
}

}  // namespace sqz
