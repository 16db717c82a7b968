#include <cmath>
#include <cstdlib>

#include "tables.hpp"

namespace sqz::kernels::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    lane[0] += a[i] * b[i];
    lane[1] += a[i + 1] * b[i + 1];
    lane[2] += a[i + 2] * b[i + 2];
    lane[3] += a[i + 3] * b[i + 3];
  }
  double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_squares_scalar(const double* a, std::size_t n) { return dot_scalar(a, a, n); }

double sum_sq_diff_scalar(const double* a, const double* b, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double d = a[i + j] - b[i + j];
      lane[j] += d * d;
    }
  }
  double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double max_abs_scalar(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(a[i]));
  return m;
}

std::int64_t sum_abs_diff_i16_scalar(const std::int16_t* a, const std::int16_t* b, std::size_t n) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < n; ++i) s += std::abs(static_cast<int>(a[i]) - static_cast<int>(b[i]));
  return s;
}

void dwt_forward_scalar(const double* in, std::size_t half, const FilterPair& f, double* approx,
                        double* detail) {
  const std::size_t n = 2 * half;
  for (std::size_t i = 0; i < half; ++i) {
    const double x0 = in[2 * i];
    const double x1 = in[2 * i + 1];
    const double x2 = in[(2 * i + 2) % n];
    const double x3 = in[(2 * i + 3) % n];
    approx[i] = ((f.h[0] * x0 + f.h[1] * x1) + f.h[2] * x2) + f.h[3] * x3;
    detail[i] = ((f.g[0] * x0 + f.g[1] * x1) + f.g[2] * x2) + f.g[3] * x3;
  }
}

void dwt_inverse_scalar(const double* approx, const double* detail, std::size_t half,
                        const FilterPair& f, double* out) {
  for (std::size_t j = 0; j < half; ++j) {
    const std::size_t jm = j == 0 ? half - 1 : j - 1;
    out[2 * j] = ((f.h[0] * approx[j] + f.g[0] * detail[j]) + f.h[2] * approx[jm]) + f.g[2] * detail[jm];
    out[2 * j + 1] =
        ((f.h[1] * approx[j] + f.g[1] * detail[j]) + f.h[3] * approx[jm]) + f.g[3] * detail[jm];
  }
}

}  // namespace

const KernelTable kScalarTable = {
    Isa::Scalar,        dot_scalar,         sum_squares_scalar, sum_sq_diff_scalar, max_abs_scalar,
    sum_abs_diff_i16_scalar, dwt_forward_scalar, dwt_inverse_scalar,
};

}  // namespace sqz::kernels::detail
