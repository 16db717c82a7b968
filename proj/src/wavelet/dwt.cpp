#include <cmath>
#include <string>

#include "sqz/error.hpp"
#include "sqz/wavelet.hpp"

namespace sqz {
namespace {

kernels::FilterPair make_d4() {
  const double s3 = std::sqrt(3.0);
  const double norm = 4.0 * std::sqrt(2.0);
  kernels::FilterPair f{};
  f.h[0] = (1.0 + s3) / norm;
  f.h[1] = (3.0 + s3) / norm;
  f.h[2] = (3.0 - s3) / norm;
  f.h[3] = (1.0 - s3) / norm;
  for (int k = 0; k < 4; ++k) f.g[k] = (k % 2 == 0 ? 1.0 : -1.0) * f.h[3 - k];
  return f;
}

}  // namespace

const kernels::FilterPair& d4_filters() noexcept {
  static const kernels::FilterPair f = make_d4();
  return f;
}

std::array<double, 4> d4_equation_residuals(const kernels::FilterPair& f) noexcept {
  const double* h = f.h;
  return {
      (h[0] + h[1] + h[2] + h[3]) - std::sqrt(2.0),
      h[0] * h[2] + h[1] * h[3],
      h[0] - h[1] + h[2] - h[3],
      (h[0] * h[0] + h[1] * h[1] + h[2] * h[2] + h[3] * h[3]) - 1.0,
  };
}

std::size_t WaveletDecomposition::coefficient_count() const noexcept {
  std::size_t n = approximation.size();
  for (const auto& d : details) n += d.size();
  return n;
}

std::size_t padded_length(std::size_t n, std::size_t levels) {
  const std::size_t block = std::size_t{1} << levels;
  return (n + block - 1) / block * block;
}

std::size_t feasible_levels(std::size_t n, std::size_t wanted) {
  for (std::size_t l = wanted; l >= 1; --l) {
    if (padded_length(n, l) >> l >= 4) return l;
  }
  return 0;
}

WaveletDecomposition dwt(std::span<const double> samples, double sample_rate_hz, std::size_t levels) {
  if (samples.empty()) fail(Errc::EmptySignal, "cannot transform an empty signal");
  if (levels < 1 || levels > 40) fail(Errc::TooManyLevels, "levels must be in [1, 40]");
  const std::size_t padded = padded_length(samples.size(), levels);
  if ((padded >> levels) < 4) {
    fail(Errc::TooManyLevels, std::to_string(levels) + " levels leave fewer than 4 coarse coefficients for " +
                                  std::to_string(samples.size()) + " samples");
  }

  WaveletDecomposition d;
  d.levels = levels;
  d.original_len = samples.size();
  d.padded_len = padded;
  d.sample_rate_hz = sample_rate_hz;

  const auto& k = kernels::active();
  const auto& f = d4_filters();
  std::vector<double> current(padded, 0.0);
  std::copy(samples.begin(), samples.end(), current.begin());
  for (std::size_t level = 1; level <= levels; ++level) {
    const std::size_t half = current.size() / 2;
    std::vector<double> approx(half);
    std::vector<double> detail(half);
    k.dwt_forward_step(current.data(), half, f, approx.data(), detail.data());
    d.details.push_back(std::move(detail));
    current = std::move(approx);
  }
  d.approximation = std::move(current);
  return d;
}

WaveletDecomposition dwt(const Signal& s, std::size_t levels) {
  return dwt(s.samples(), s.sample_rate_hz(), levels);
}

std::vector<double> idwt_padded(const WaveletDecomposition& d) {
  if (d.levels < 1 || d.details.size() != d.levels) fail(Errc::ShapeMismatch, "detail band count != levels");
  if (d.padded_len == 0 || d.padded_len % (std::size_t{1} << d.levels) != 0 ||
      d.approximation.size() != (d.padded_len >> d.levels) || d.approximation.size() < 4) {
    fail(Errc::ShapeMismatch, "approximation band length inconsistent with padded_len");
  }
  for (std::size_t j = 1; j <= d.levels; ++j) {
    if (d.details[j - 1].size() != (d.padded_len >> j)) {
      fail(Errc::ShapeMismatch, "detail band " + std::to_string(j) + " has the wrong length");
    }
  }
  if (d.original_len == 0 || d.original_len > d.padded_len) fail(Errc::ShapeMismatch, "original_len out of range");

  const auto& k = kernels::active();
  const auto& f = d4_filters();
  std::vector<double> current = d.approximation;
  for (std::size_t j = d.levels; j >= 1; --j) {
    const std::size_t half = current.size();
    std::vector<double> out(2 * half);
    k.dwt_inverse_step(current.data(), d.details[j - 1].data(), half, f, out.data());
    current = std::move(out);
  }
  return current;
}

Signal idwt(const WaveletDecomposition& d) {
  std::vector<double> x = idwt_padded(d);
  x.resize(d.original_len);
  return Signal(std::move(x), d.sample_rate_hz);
}

std::vector<double> flatten(const WaveletDecomposition& d) {
  std::vector<double> out;
  out.reserve(d.coefficient_count());
  out.insert(out.end(), d.approximation.begin(), d.approximation.end());
  for (std::size_t j = d.details.size(); j >= 1; --j) {
    out.insert(out.end(), d.details[j - 1].begin(), d.details[j - 1].end());
  }
  return out;
}

WaveletDecomposition unflatten(std::span<const double> coeffs, std::size_t levels, std::size_t original_len,
                               double sample_rate_hz) {
  const std::size_t padded = coeffs.size();
  if (levels < 1 || levels > 40 || padded % (std::size_t{1} << levels) != 0 || (padded >> levels) < 4) {
    fail(Errc::ShapeMismatch, "coefficient count does not fit the level count");
  }
  WaveletDecomposition d;
  d.levels = levels;
  d.original_len = original_len;
  d.padded_len = padded;
  d.sample_rate_hz = sample_rate_hz;
  std::size_t pos = padded >> levels;
  d.approximation.assign(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(pos));
  d.details.resize(levels);
  for (std::size_t j = levels; j >= 1; --j) {
    const std::size_t len = padded >> j;
    d.details[j - 1].assign(coeffs.begin() + static_cast<std::ptrdiff_t>(pos),
                            coeffs.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
  }
  return d;
}

}  // namespace sqz
