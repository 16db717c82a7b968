#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "fixtures.hpp"
#include "sqz/error.hpp"
#include "sqz/kernels.hpp"
#include "sqz/signal.hpp"
#include "sqz/signal_io.hpp"

using namespace sqz;

namespace {

double snr_db(const Signal& clean, const Signal& noisy) {
  return 10.0 * std::log10(kernels::sum_squares(clean.samples()) / kernels::sum_sq_diff(clean.samples(), noisy.samples()));
}

}  // namespace

TEST_SUITE("signalgen") {
  TEST_CASE("sine starts at zero and peaks at the quarter period") {
    const Signal s = gen_sine({1.0, 60.0, 0.0, 15360.0}, 256);
    CHECK(s.size() == 256);
    CHECK(s[0] == 0.0);
    CHECK(s[64] == 1.0);
  }

  TEST_CASE("zero amplitude gives silence") {
    const Signal s = gen_sine({0.0, 60.0, 1.3, 15360.0}, 16);
    for (double v : s.samples()) CHECK(v == 0.0);
  }

  TEST_CASE("sine follows its closed form") {
    const SineSpec spec{2.5, 50.0, 0.7, 8000.0};
    const Signal s = gen_sine(spec, 1000);
    for (std::size_t k = 0; k < s.size(); k += 37) {
      CHECK(std::fabs(s[k] - 2.5 * std::sin(2 * std::numbers::pi * 50.0 * k / 8000.0 + 0.7)) <= 1e-11);
    }
  }

  TEST_CASE("integer-period sines repeat exactly") {
    const Signal s = gen_sine({1.0, 60.0, 0.3, 15360.0}, 2560);
    for (std::size_t k = 0; k + 256 < s.size(); ++k) CHECK(std::fabs(s[k + 256] - s[k]) <= 1e-12);
  }

  TEST_CASE("sine argument errors") {
    CHECK(fixture::errc_of([] { gen_sine({1.0, 7680.0, 0.0, 15360.0}, 8); }) == Errc::NyquistViolation);
    CHECK(fixture::errc_of([] { gen_sine({1.0, 9000.0, 0.0, 15360.0}, 8); }) == Errc::NyquistViolation);
    CHECK(fixture::errc_of([] { gen_sine({1.0, 60.0, 0.0, 15360.0}, 0); }) == Errc::EmptySignal);
  }

  TEST_CASE("dip factor one is the plain sine") {
    const SineSpec spec{};
    CHECK(gen_voltage_dip(spec, 100, 900, 1.0, 1024) == gen_sine(spec, 1024));
  }

  TEST_CASE("dip over the whole record halves every sample") {
    const SineSpec spec{};
    const Signal s = gen_sine(spec, 1024);
    const Signal d = gen_voltage_dip(spec, 0, 1024, 0.5, 1024);
    for (std::size_t k = 0; k < s.size(); ++k) CHECK(d[k] == doctest::Approx(0.5 * s[k]).epsilon(1e-15));
  }

  TEST_CASE("dip touches only its interval") {
    const SineSpec spec{};
    const Signal s = gen_sine(spec, 1024);
    const Signal d = gen_voltage_dip(spec, 256, 512, 0.3, 1024);
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (k < 256 || k >= 512) {
        CHECK(d[k] == s[k]);
      } else {
        CHECK(d[k] == doctest::Approx(0.3 * s[k]).epsilon(1e-14));
      }
    }
  }

  TEST_CASE("dip interval errors") {
    CHECK(fixture::errc_of([] { gen_voltage_dip({}, 500, 400, 0.5, 1024); }) == Errc::BadInterval);
    CHECK(fixture::errc_of([] { gen_voltage_dip({}, 0, 1025, 0.5, 1024); }) == Errc::BadInterval);
    CHECK(fixture::errc_of([] { gen_voltage_dip({}, 10, 10, 0.5, 1024); }) == Errc::BadInterval);
  }

  TEST_CASE("zero-amplitude transients leave the fundamental") {
    const SineSpec spec{};
    CHECK(gen_transients(spec, {512, 0.0, 0.9, 1000.0}, 2048) == gen_sine(spec, 2048));
  }

  TEST_CASE("a lone transient is a damped sinusoid") {
    const SineSpec silent{0.0, 60.0, 0.0, 15360.0};
    const TransientSpec t{100000, 0.8, 0.95, 1000.0};
    const Signal s = gen_transients(silent, t, 400);
    for (std::size_t k = 0; k < s.size(); ++k) {
      const double expect = 0.8 * std::pow(0.95, k) * std::sin(2 * std::numbers::pi * 1000.0 * k / 15360.0);
      CHECK(std::fabs(s[k] - expect) <= 1e-12);
      CHECK(std::fabs(s[k]) <= 0.8 * std::pow(0.95, k) + 1e-15);
    }
  }

  TEST_CASE("transient onsets repeat every period from zero") {
    const auto onsets = transient_onsets({1000, 0.3, 0.9, 1000.0}, 3500);
    CHECK(onsets == std::vector<std::size_t>{0, 1000, 2000, 3000});
  }

  TEST_CASE("transient frequency obeys Nyquist") {
    CHECK(fixture::errc_of([] { gen_transients({}, {100, 0.3, 0.9, 8000.0}, 1000); }) == Errc::NyquistViolation);
  }

  TEST_CASE("noise lands exactly on the requested SNR") {
    const Signal s = gen_sine({}, 4096);
    for (double target : {34.2, 0.0, 10.0, 60.0, -5.0}) {
      const Signal n = add_noise(s, target, 99);
      CHECK(std::fabs(snr_db(s, n) - target) <= 1e-9);
    }
  }

  TEST_CASE("noise is reproducible from its seed") {
    const Signal s = gen_sine({}, 1000);
    CHECK(add_noise(s, 34.2, 5) == add_noise(s, 34.2, 5));
    CHECK(!(add_noise(s, 34.2, 5) == add_noise(s, 34.2, 6)));
  }

  TEST_CASE("noise argument errors") {
    const Signal s = gen_sine({}, 100);
    CHECK(fixture::errc_of([&] { add_noise(s, std::numeric_limits<double>::infinity(), 1); }) == Errc::InvalidArgument);
    CHECK(fixture::errc_of([&] { add_noise(s, std::nan(""), 1); }) == Errc::InvalidArgument);
    CHECK(fixture::errc_of([] { add_noise(Signal(std::vector<double>(10, 0.0), 100.0), 20.0, 1); }) == Errc::ZeroSignal);
  }

  TEST_CASE("300 dB of noise is negligible") {
    const Signal s = gen_sine({}, 1000);
    const Signal n = add_noise(s, 300.0, 3);
    CHECK(kernels::sum_sq_diff(s.samples(), n.samples()) / kernels::sum_squares(s.samples()) <= 1e-12);
  }

  TEST_CASE("noise source is a documented LCG") {
    NoiseSource a(0);
    CHECK(a.next_u64() == 1442695040888963407ULL);
    CHECK(a.next_u64() == 1442695040888963407ULL * 6364136223846793005ULL + 1442695040888963407ULL);
    NoiseSource b(42);
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < 20000; ++i) {
      const double g = b.next_gaussian();
      sum += g;
      sq += g * g;
    }
    CHECK(std::fabs(sum / 20000) < 0.05);
    CHECK(std::fabs(sq / 20000 - 1.0) < 0.05);
  }

  TEST_CASE("quantization") {
    CHECK(quantize(Signal({0.0, 0.0, 0.0}, 100.0), 0.5).samples()[1] == 0);
    CHECK(quantize(Signal({1.0}, 100.0), 1.0 / 1000).samples()[0] == 1000);
    CHECK(quantize(Signal({0.5, -0.5, 1.5, -2.5}, 100.0), 1.0).samples()[0] == 1);
    CHECK(quantize(Signal({0.5, -0.5, 1.5, -2.5}, 100.0), 1.0).samples()[1] == -1);
    CHECK(quantize(Signal({0.5, -0.5, 1.5, -2.5}, 100.0), 1.0).samples()[3] == -3);

    const Signal s = gen_sine({}, 15360);
    const double scale = 1.0 / 30000;
    const Signal back = dequantize(quantize(s, scale));
    double worst = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) worst = std::max(worst, std::fabs(back[k] - s[k]));
    CHECK(worst <= 1.6667e-5);
    CHECK(worst <= scale / 2 + 1e-15);
  }

  TEST_CASE("quantization overflow") {
    CHECK(fixture::errc_of([] { quantize(Signal({1.0}, 10.0), 1.0 / 40000); }) == Errc::Overflow);
    CHECK(quantize(Signal({-1.0}, 10.0), 1.0 / 32768).samples()[0] == -32768);
  }

  TEST_CASE("signal invariants") {
    CHECK(fixture::errc_of([] { Signal({}, 100.0); }) == Errc::EmptySignal);
    CHECK(fixture::errc_of([] { Signal({1.0}, 0.0); }) == Errc::InvalidArgument);
    CHECK(fixture::errc_of([] { Signal({std::nan("")}, 10.0); }) == Errc::InvalidArgument);
    CHECK(fixture::errc_of([] { Signal({std::numeric_limits<double>::infinity()}, 10.0); }) == Errc::InvalidArgument);
    CHECK(fixture::errc_of([] { QuantizedSignal({1}, 0.0, 10.0); }) == Errc::InvalidArgument);
  }
}

TEST_SUITE("signal_io") {
  TEST_CASE("signal CSV round-trips exactly") {
    const Signal s = add_noise(gen_sine({}, 500), 30.0, 1);
    const std::string text = format_signal_csv(s);
    CHECK(text.rfind("# sample_rate_hz=15360\n", 0) == 0);
    CHECK(parse_signal_csv(text) == s);
  }

  TEST_CASE("quantized CSV round-trips and dequantizes") {
    const QuantizedSignal q = quantize(gen_sine({}, 300), 1.0 / 2047);
    const std::string text = format_quantized_csv(q);
    CHECK(csv_has_scale(text));
    CHECK(parse_quantized_csv(text) == q);
    CHECK(parse_signal_csv(text) == dequantize(q));
  }

  TEST_CASE("CSV errors") {
    CHECK(fixture::errc_of([] { parse_signal_csv("0.5\n"); }) == Errc::ParseError);
    CHECK(fixture::errc_of([] { parse_signal_csv("# sample_rate_hz=100\nabc\n"); }) == Errc::ParseError);
    CHECK(fixture::errc_of([] { parse_quantized_csv("# sample_rate_hz=100\n1\n"); }) == Errc::ParseError);
    CHECK(fixture::errc_of([] { parse_signal_csv("# sample_rate_hz=100\n"); }) == Errc::EmptySignal);
  }

  TEST_CASE("missing files are IoError") {
    CHECK(fixture::errc_of([] { read_file_bytes("/nonexistent/definitely/missing.bin"); }) == Errc::IoError);
  }
}
