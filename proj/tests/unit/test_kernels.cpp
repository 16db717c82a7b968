#include <doctest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "sqz/kernels.hpp"
#include "sqz/wavelet.hpp"

using namespace sqz;

namespace {

std::vector<double> random_doubles(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1000.0, 1000.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar table is always available and listed first") {
    const auto tables = kernels::available();
    REQUIRE(!tables.empty());
    CHECK(tables.front()->isa == kernels::Isa::Scalar);
    CHECK(&kernels::scalar_table() == tables.front());
  }

  TEST_CASE("every variant matches the scalar reference bit for bit") {
    std::mt19937_64 rng(7);
    const auto& ref = kernels::scalar_table();
    const auto& f = d4_filters();
    for (const auto* t : kernels::available()) {
      CAPTURE(kernels::isa_name(t->isa));
      for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 31u, 64u, 101u, 1024u, 4099u}) {
        const auto a = random_doubles(n, rng);
        const auto b = random_doubles(n, rng);
        CHECK(t->dot(a.data(), b.data(), n) == ref.dot(a.data(), b.data(), n));
        CHECK(t->sum_squares(a.data(), n) == ref.sum_squares(a.data(), n));
        CHECK(t->sum_sq_diff(a.data(), b.data(), n) == ref.sum_sq_diff(a.data(), b.data(), n));
        CHECK(t->max_abs(a.data(), n) == ref.max_abs(a.data(), n));

        std::vector<std::int16_t> ia(n);
        std::vector<std::int16_t> ib(n);
        for (std::size_t i = 0; i < n; ++i) {
          ia[i] = static_cast<std::int16_t>(rng());
          ib[i] = static_cast<std::int16_t>(rng());
        }
        CHECK(t->sum_abs_diff_i16(ia.data(), ib.data(), n) == ref.sum_abs_diff_i16(ia.data(), ib.data(), n));
      }
      for (std::size_t half : {2u, 3u, 4u, 5u, 8u, 9u, 16u, 33u, 512u}) {
        const auto x = random_doubles(2 * half, rng);
        std::vector<double> a1(half), d1(half), a2(half), d2(half);
        t->dwt_forward_step(x.data(), half, f, a1.data(), d1.data());
        ref.dwt_forward_step(x.data(), half, f, a2.data(), d2.data());
        CHECK(a1 == a2);
        CHECK(d1 == d2);
        std::vector<double> y1(2 * half), y2(2 * half);
        t->dwt_inverse_step(a1.data(), d1.data(), half, f, y1.data());
        ref.dwt_inverse_step(a2.data(), d2.data(), half, f, y2.data());
        CHECK(y1 == y2);
      }
    }
  }

  TEST_CASE("sum_abs_diff handles the widest int16 differences") {
    std::vector<std::int16_t> lo(5000, -32768);
    std::vector<std::int16_t> hi(5000, 32767);
    for (const auto* t : kernels::available()) {
      CHECK(t->sum_abs_diff_i16(lo.data(), hi.data(), lo.size()) == std::int64_t{65535} * 5000);
    }
  }

  TEST_CASE("forward step matches the dense analysis matrix") {
    const auto& f = d4_filters();
    std::mt19937_64 rng(3);
    const std::size_t n = 16;
    const auto x = random_doubles(n, rng);
    const auto m = oracle::dwt_matrix(f.h, f.g, n);
    std::vector<double> a(n / 2), d(n / 2);
    kernels::active().dwt_forward_step(x.data(), n / 2, f, a.data(), d.data());
    for (std::size_t i = 0; i < n; ++i) {
      double expect = 0.0;
      for (std::size_t j = 0; j < n; ++j) expect += m[i][j] * x[j];
      const double got = i < n / 2 ? a[i] : d[i - n / 2];
      CHECK(got == doctest::Approx(expect).epsilon(1e-12));
    }
  }

  TEST_CASE("span wrappers reject mismatched lengths") {
    std::vector<double> a(3), b(4);
    CHECK_THROWS(kernels::dot(a, b));
    CHECK_THROWS(kernels::sum_sq_diff(a, b));
  }
}
