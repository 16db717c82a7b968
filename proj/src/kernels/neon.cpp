// AArch64 variant. Two float64x2 accumulators stand in for the four scalar
// lanes so the reduction order matches the other tables.

#include <arm_neon.h>

#include <cmath>
#include <cstdlib>

#include "tables.hpp"

namespace sqz::kernels::detail {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    acc23 = vaddq_f64(acc23, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  double s = vaddvq_f64(acc01) + vaddvq_f64(acc23);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_squares_neon(const double* a, std::size_t n) { return dot_neon(a, a, n); }

double sum_sq_diff_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t d01 = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    const float64x2_t d23 = vsubq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    acc01 = vaddq_f64(acc01, vmulq_f64(d01, d01));
    acc23 = vaddq_f64(acc23, vmulq_f64(d23, d23));
  }
  double s = vaddvq_f64(acc01) + vaddvq_f64(acc23);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double max_abs_neon(const double* a, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(a + i)));
  double r = vmaxvq_f64(m);
  for (; i < n; ++i) r = std::fmax(r, std::fabs(a[i]));
  return r;
}

std::int64_t sum_abs_diff_i16_neon(const std::int16_t* a, const std::int16_t* b, std::size_t n) {
  std::int64_t total = 0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const int16x8_t va = vld1q_s16(a + i);
    const int16x8_t vb = vld1q_s16(b + i);
    const uint16x8_t d = vreinterpretq_u16_s16(vabdq_s16(va, vb));
    total += vaddlvq_u16(d);
  }
  for (; i < n; ++i) total += std::abs(static_cast<int>(a[i]) - static_cast<int>(b[i]));
  return total;
}

inline float64x2_t taps(const double* c, float64x2_t x0, float64x2_t x1, float64x2_t x2,
                        float64x2_t x3) {
  float64x2_t s = vaddq_f64(vmulq_n_f64(x0, c[0]), vmulq_n_f64(x1, c[1]));
  s = vaddq_f64(s, vmulq_n_f64(x2, c[2]));
  return vaddq_f64(s, vmulq_n_f64(x3, c[3]));
}

void dwt_forward_neon(const double* in, std::size_t half, const FilterPair& f, double* approx,
                      double* detail) {
  std::size_t i = 0;
  for (; i + 2 < half; i += 2) {
    const float64x2x2_t p0 = vld2q_f64(in + 2 * i);
    const float64x2x2_t p1 = vld2q_f64(in + 2 * i + 2);
    vst1q_f64(approx + i, taps(f.h, p0.val[0], p0.val[1], p1.val[0], p1.val[1]));
    vst1q_f64(detail + i, taps(f.g, p0.val[0], p0.val[1], p1.val[0], p1.val[1]));
  }
  const std::size_t n = 2 * half;
  for (; i < half; ++i) {
    const double x0 = in[2 * i];
    const double x1 = in[2 * i + 1];
    const double x2 = in[(2 * i + 2) % n];
    const double x3 = in[(2 * i + 3) % n];
    approx[i] = ((f.h[0] * x0 + f.h[1] * x1) + f.h[2] * x2) + f.h[3] * x3;
    detail[i] = ((f.g[0] * x0 + f.g[1] * x1) + f.g[2] * x2) + f.g[3] * x3;
  }
}

inline void inverse_one(const double* approx, const double* detail, std::size_t half,
                        const FilterPair& f, std::size_t j, double* out) {
  const std::size_t jm = j == 0 ? half - 1 : j - 1;
  out[2 * j] = ((f.h[0] * approx[j] + f.g[0] * detail[j]) + f.h[2] * approx[jm]) + f.g[2] * detail[jm];
  out[2 * j + 1] =
      ((f.h[1] * approx[j] + f.g[1] * detail[j]) + f.h[3] * approx[jm]) + f.g[3] * detail[jm];
}

void dwt_inverse_neon(const double* approx, const double* detail, std::size_t half,
                      const FilterPair& f, double* out) {
  inverse_one(approx, detail, half, f, 0, out);
  const double even_c[4] = {f.h[0], f.g[0], f.h[2], f.g[2]};
  const double odd_c[4] = {f.h[1], f.g[1], f.h[3], f.g[3]};
  std::size_t j = 1;
  for (; j + 1 < half; j += 2) {
    const float64x2_t a = vld1q_f64(approx + j);
    const float64x2_t d = vld1q_f64(detail + j);
    const float64x2_t am = vld1q_f64(approx + j - 1);
    const float64x2_t dm = vld1q_f64(detail + j - 1);
    float64x2x2_t pair;
    pair.val[0] = taps(even_c, a, d, am, dm);
    pair.val[1] = taps(odd_c, a, d, am, dm);
    vst2q_f64(out + 2 * j, pair);
  }
  for (; j < half; ++j) inverse_one(approx, detail, half, f, j, out);
}

}  // namespace

const KernelTable kNeonTable = {
    Isa::Neon,        dot_neon,         sum_squares_neon, sum_sq_diff_neon, max_abs_neon,
    sum_abs_diff_i16_neon, dwt_forward_neon, dwt_inverse_neon,
};

}  // namespace sqz::kernels::detail
