#include <cstdlib>
#include <cstring>

#include "sqz/error.hpp"
#include "tables.hpp"

namespace sqz::kernels {
namespace {

bool force_scalar() {
  const char* v = std::getenv("SQZ_FORCE_SCALAR");
  return v != nullptr && std::strcmp(v, "0") != 0 && *v != '\0';
}

bool host_has_avx2() {
#if defined(SQZ_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& select() {
  if (force_scalar()) return detail::kScalarTable;
#if defined(SQZ_HAVE_AVX2)
  if (host_has_avx2()) return detail::kAvx2Table;
#endif
#if defined(SQZ_HAVE_NEON)
  return detail::kNeonTable;
#endif
  return detail::kScalarTable;
}

void check_same_size(std::size_t a, std::size_t b) {
  if (a != b) fail(Errc::LengthMismatch, "kernel operands differ in length");
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

const KernelTable& active() noexcept {
  static const KernelTable& table = select();
  return table;
}

const KernelTable& scalar_table() noexcept { return detail::kScalarTable; }

std::vector<const KernelTable*> available() noexcept {
  std::vector<const KernelTable*> out{&detail::kScalarTable};
#if defined(SQZ_HAVE_AVX2)
  if (host_has_avx2()) out.push_back(&detail::kAvx2Table);
#endif
#if defined(SQZ_HAVE_NEON)
  out.push_back(&detail::kNeonTable);
#endif
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  check_same_size(a.size(), b.size());
  return active().dot(a.data(), b.data(), a.size());
}

double sum_squares(std::span<const double> a) { return active().sum_squares(a.data(), a.size()); }

double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
  check_same_size(a.size(), b.size());
  return active().sum_sq_diff(a.data(), b.data(), a.size());
}

double max_abs(std::span<const double> a) { return active().max_abs(a.data(), a.size()); }

std::int64_t sum_abs_diff(std::span<const std::int16_t> a, std::span<const std::int16_t> b) {
  check_same_size(a.size(), b.size());
  return active().sum_abs_diff_i16(a.data(), b.data(), a.size());
}

}  // namespace sqz::kernels
