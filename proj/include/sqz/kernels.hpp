#pragma once

// Data-parallel inner loops shared by the signal coders.
//
// Each kernel has a portable scalar reference and, where the host supports
// it, a vector variant. The scalar reductions accumulate in four interleaved
// lanes and fold them as (l0 + l1) + (l2 + l3), which is exactly what the
// 256-bit variant computes, and no variant fuses multiply-add. All variants of
// a kernel therefore return bit-identical results, and the equivalence tests
// compare them with ==.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace sqz::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa) noexcept;

// Orthonormal four-tap analysis filter pair: low-pass h, high-pass g.
struct FilterPair {
  double h[4];
  double g[4];
};

struct KernelTable {
  Isa isa;

  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum_squares)(const double* a, std::size_t n);
  double (*sum_sq_diff)(const double* a, const double* b, std::size_t n);
  double (*max_abs)(const double* a, std::size_t n);
  std::int64_t (*sum_abs_diff_i16)(const std::int16_t* a, const std::int16_t* b, std::size_t n);

  // One periodic analysis step: n = 2*half input samples produce half
  // approximation and half detail coefficients. Requires half >= 2.
  void (*dwt_forward_step)(const double* in, std::size_t half, const FilterPair& f,
                           double* approx, double* detail);
  // Exact inverse of dwt_forward_step (transpose of the orthonormal matrix).
  void (*dwt_inverse_step)(const double* approx, const double* detail, std::size_t half,
                           const FilterPair& f, double* out);
};

// Table chosen once per process from CPU features. Setting the environment
// variable SQZ_FORCE_SCALAR=1 pins the scalar table.
const KernelTable& active() noexcept;

// Every table that can run on this host; the scalar table is always first.
std::vector<const KernelTable*> available() noexcept;

const KernelTable& scalar_table() noexcept;

// Convenience wrappers over active().
double dot(std::span<const double> a, std::span<const double> b);
double sum_squares(std::span<const double> a);
double sum_sq_diff(std::span<const double> a, std::span<const double> b);
double max_abs(std::span<const double> a);
std::int64_t sum_abs_diff(std::span<const std::int16_t> a, std::span<const std::int16_t> b);

}  // namespace sqz::kernels
