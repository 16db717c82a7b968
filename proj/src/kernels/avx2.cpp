// Compiled with -mavx2 only; reached through the dispatcher after a CPU check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "tables.hpp"

namespace sqz::kernels::detail {
namespace {

inline double fold4(__m256d acc) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double s = fold4(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_squares_avx2(const double* a, std::size_t n) { return dot_avx2(a, a, n); }

double sum_sq_diff_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double s = fold4(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double max_abs_avx2(const double* a, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(a + i)));
  alignas(32) double lane[4];
  _mm256_store_pd(lane, m);
  double r = std::fmax(std::fmax(lane[0], lane[1]), std::fmax(lane[2], lane[3]));
  for (; i < n; ++i) r = std::fmax(r, std::fabs(a[i]));
  return r;
}

std::int64_t sum_abs_diff_i16_avx2(const std::int16_t* a, const std::int16_t* b, std::size_t n) {
  // Each 32-bit lane gains at most 2 * 65535 per iteration; flushing every
  // 4096 iterations keeps it below 2^31.
  constexpr std::size_t kBlock = 4096 * 16;
  std::int64_t total = 0;
  std::size_t i = 0;
  while (i + 16 <= n) {
    const std::size_t stop = std::min(n - (n - i) % 16, i + kBlock);
    __m256i acc = _mm256_setzero_si256();
    for (; i < stop; i += 16) {
      const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
      const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
      const __m256i lo = _mm256_sub_epi32(_mm256_cvtepi16_epi32(_mm256_castsi256_si128(va)),
                                          _mm256_cvtepi16_epi32(_mm256_castsi256_si128(vb)));
      const __m256i hi = _mm256_sub_epi32(_mm256_cvtepi16_epi32(_mm256_extracti128_si256(va, 1)),
                                          _mm256_cvtepi16_epi32(_mm256_extracti128_si256(vb, 1)));
      acc = _mm256_add_epi32(acc, _mm256_add_epi32(_mm256_abs_epi32(lo), _mm256_abs_epi32(hi)));
    }
    alignas(32) std::int32_t lane[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane), acc);
    for (std::int32_t v : lane) total += v;
  }
  for (; i < n; ++i) total += std::abs(static_cast<int>(a[i]) - static_cast<int>(b[i]));
  return total;
}

inline __m256d evens(__m256d a, __m256d b) {
  return _mm256_permute4x64_pd(_mm256_unpacklo_pd(a, b), 0b11011000);
}

inline __m256d odds(__m256d a, __m256d b) {
  return _mm256_permute4x64_pd(_mm256_unpackhi_pd(a, b), 0b11011000);
}

inline __m256d taps(const double* c, __m256d x0, __m256d x1, __m256d x2, __m256d x3) {
  __m256d s = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(c[0]), x0),
                            _mm256_mul_pd(_mm256_set1_pd(c[1]), x1));
  s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_set1_pd(c[2]), x2));
  return _mm256_add_pd(s, _mm256_mul_pd(_mm256_set1_pd(c[3]), x3));
}

void dwt_forward_avx2(const double* in, std::size_t half, const FilterPair& f, double* approx,
                      double* detail) {
  std::size_t i = 0;
  for (; i + 4 < half; i += 4) {
    const double* x = in + 2 * i;
    const __m256d a = _mm256_loadu_pd(x);
    const __m256d b = _mm256_loadu_pd(x + 4);
    const __m256d c = _mm256_loadu_pd(x + 2);
    const __m256d d = _mm256_loadu_pd(x + 6);
    const __m256d e0 = evens(a, b);
    const __m256d o0 = odds(a, b);
    const __m256d e1 = evens(c, d);
    const __m256d o1 = odds(c, d);
    _mm256_storeu_pd(approx + i, taps(f.h, e0, o0, e1, o1));
    _mm256_storeu_pd(detail + i, taps(f.g, e0, o0, e1, o1));
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

void dwt_inverse_avx2(const double* approx, const double* detail, std::size_t half,
                      const FilterPair& f, double* out) {
  inverse_one(approx, detail, half, f, 0, out);
  const double even_c[4] = {f.h[0], f.g[0], f.h[2], f.g[2]};
  const double odd_c[4] = {f.h[1], f.g[1], f.h[3], f.g[3]};
  std::size_t j = 1;
  for (; j + 3 < half; j += 4) {
    const __m256d a = _mm256_loadu_pd(approx + j);
    const __m256d d = _mm256_loadu_pd(detail + j);
    const __m256d am = _mm256_loadu_pd(approx + j - 1);
    const __m256d dm = _mm256_loadu_pd(detail + j - 1);
    const __m256d ev = taps(even_c, a, d, am, dm);
    const __m256d od = taps(odd_c, a, d, am, dm);
    const __m256d lo = _mm256_unpacklo_pd(ev, od);
    const __m256d hi = _mm256_unpackhi_pd(ev, od);
    _mm256_storeu_pd(out + 2 * j, _mm256_permute2f128_pd(lo, hi, 0x20));
    _mm256_storeu_pd(out + 2 * j + 4, _mm256_permute2f128_pd(lo, hi, 0x31));
  }
  for (; j < half; ++j) inverse_one(approx, detail, half, f, j, out);
}

}  // namespace

const KernelTable kAvx2Table = {
    Isa::Avx2,        dot_avx2,         sum_squares_avx2, sum_sq_diff_avx2, max_abs_avx2,
    sum_abs_diff_i16_avx2, dwt_forward_avx2, dwt_inverse_avx2,
};

}  // namespace sqz::kernels::detail
