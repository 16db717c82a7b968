#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "json.hpp"
#include "sqz/signal.hpp"

namespace sqz {

struct RatioReport {
  double ratio = 0.0;
  std::string display;  // "5.0:1"
};

// original / compressed; throws ZeroDenominator when compressed is 0.
RatioReport compression_ratio(std::uint64_t original_bytes, std::uint64_t compressed_bytes);
std::string format_ratio(double ratio);

// NMSE-based distortion. A perfect match gives nmse 0 with mse_db = -inf
// and snr_db = +inf.
struct DistortionReport {
  double nmse = 0.0;
  double mse_db = 0.0;
  double prd_pct = 0.0;
  double snr_db = 0.0;
};

DistortionReport distortion(std::span<const double> x, std::span<const double> xhat);
DistortionReport distortion(const Signal& x, const Signal& xhat);

// Flat object with the four fields; infinities become "inf" / "-inf".
nlohmann::ordered_json to_json(const DistortionReport& r);
nlohmann::ordered_json json_number(double v);

}  // namespace sqz
