// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sqz/codecs.hpp"
#include "sqz/hybrid.hpp"
#include "sqz/kernels.hpp"
#include "sqz/memsim.hpp"
#include "sqz/metrics.hpp"
#include "sqz/periodic.hpp"
#include "sqz/romtool.hpp"
#include "sqz/signal.hpp"
#include "sqz/wavelet.hpp"

namespace fs = std::filesystem;
using namespace sqz;

namespace {

// Pinned tolerances.
constexpr double kFuzzSecondsMax = 60.0;
constexpr std::size_t kFuzzPerCodec = 1000;
constexpr std::size_t kFuzzMaxLen = 65536;
constexpr std::uint64_t kTc1734 = 1048576;
constexpr double kRleRunRatioMin = 10.0;
constexpr double kRleZeroRatioMin = 100.0;
constexpr std::uint64_t kRleZeroSavedMin = 90 * 1024;
constexpr double kPredictiveRatioMin = 10.0;
constexpr double kNoisySnrDb = 34.2;
constexpr double kSnrExactTol = 1e-9;
constexpr double kReconstructionTol = 1e-9;
constexpr double kEnergyTol = 1e-9;
constexpr double kFilterTol = 1e-12;
constexpr double kDipRatioTarget = 6.0;
constexpr double kDipNmseMax = 1e-3;
constexpr double kFreqTolHz = 0.01;
constexpr double kAmpTolRel = 1e-3;
constexpr double kPhaseTolRad = 0.005;
constexpr double kResidueNmseMax = 1e-4;
constexpr double kHybridRatioTarget = 8.0;
constexpr double kHybridSnrMin = 20.0;
constexpr double kMetricsTol = 1e-12;
constexpr double kZeroImageReductionMin = 60.0;
constexpr std::size_t kCorruptions = 1000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("unexpected exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("criterion %2d %s: %s  [%s]\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<std::uint8_t> fuzz_input(std::size_t i, std::mt19937_64& rng) {
  const std::size_t n = rng() % (kFuzzMaxLen + 1);
  const std::uint64_t seed = rng();
  switch (i % 4) {
    case 0: return fixture::random_bytes(n, seed);
    case 1: return fixture::run_bytes(n, 1 + seed % 300, seed);
    case 2: return fixture::text_bytes(n, seed);
    default: return fixture::sparse_bytes(n, seed);
  }
}

// Byte input reinterpreted as 16-bit samples, at least four of them so some
// period in [2, n/2] exists; every other input is made periodic so the
// predictor sees both regimes.
QuantizedSignal fuzz_signal(std::vector<std::uint8_t> bytes, std::size_t i, std::size_t& period,
                            std::mt19937_64& rng) {
  if (bytes.size() % 2) bytes.pop_back();
  while (bytes.size() < 8) bytes.push_back(static_cast<std::uint8_t>(rng()));
  std::vector<std::int16_t> x(bytes.size() / 2);
  for (std::size_t k = 0; k < x.size(); ++k) {
    x[k] = static_cast<std::int16_t>(bytes[2 * k] | (bytes[2 * k + 1] << 8));
  }
  period = 2 + rng() % (x.size() / 2 - 1);
  if (i % 2 == 0) {
    for (std::size_t k = period; k < x.size(); ++k) {
      x[k] = static_cast<std::int16_t>(x[k - period] + static_cast<int>(rng() % 5) - 2);
    }
  }
  return QuantizedSignal(std::move(x), 1.0 / 2047, 15360.0);
}

Outcome criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t failed = 0;
  std::size_t bytes = 0;
  for (Algo a : {Algo::Rle, Algo::Lzw, Algo::Lzss, Algo::Lzar}) {
    std::mt19937_64 rng(1000 + static_cast<int>(a));
    for (std::size_t i = 0; i < kFuzzPerCodec; ++i) {
      const auto d = fuzz_input(i, rng);
      bytes += d.size();
      if (decode_bytes(unwrap(wrap(encode_bytes(a, d)))) != d) ++failed;
    }
  }
  std::mt19937_64 rng(2000);
  for (std::size_t i = 0; i < kFuzzPerCodec; ++i) {
    std::size_t period = 0;
    const QuantizedSignal q = fuzz_signal(fuzz_input(i, rng), i, period, rng);
    PredictiveParams p;
    p.period = period;
    p.templates = 1 + rng() % 8;
    bytes += q.size() * 2;
    if (!(predictive_decode(unwrap(wrap(predictive_encode(q, p)))) == q)) ++failed;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {failed == 0 && secs < kFuzzSecondsMax,
          fmt("%zu inputs per codec x 5 codecs, %.1f MB, %zu failures, %.1f s (limit %.0f s)", kFuzzPerCodec,
              static_cast<double>(bytes) / 1e6, failed, secs, kFuzzSecondsMax)};
}

std::vector<std::uint8_t> const_table(std::size_t n, std::uint64_t seed) {
  // Calibration curves and message strings: slowly varying 16-bit entries.
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> out;
  int v = 0;
  while (out.size() < n) {
    if (rng() % 8 == 0) {
      const auto text = fixture::text_bytes(16 + rng() % 64, rng());
      out.insert(out.end(), text.begin(), text.end());
      out.push_back(0);
    } else {
      for (int k = 0; k < 64; ++k) {
        v += static_cast<int>(rng() % 3) - 1;
        out.push_back(static_cast<std::uint8_t>(v & 0xFF));
        out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
      }
    }
  }
  out.resize(n);
  return out;
}

std::vector<std::uint8_t> runs_at_least(std::size_t n, std::size_t min_run, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> out;
  while (out.size() < n) out.insert(out.end(), min_run + rng() % 20, static_cast<std::uint8_t>(rng()));
  out.resize(n);
  return out;
}

Outcome criterion_2() {
  constexpr std::uint32_t kBase = 0x80000000u;
  constexpr std::size_t kCode = 600000;
  constexpr std::size_t kConst = 250000;
  constexpr std::size_t kInit = 102400;
  constexpr std::size_t kZero = 150000;
  constexpr std::size_t kUnlisted = 51034;

  std::vector<std::uint8_t> flash;
  auto append = [&](const std::vector<std::uint8_t>& v) { flash.insert(flash.end(), v.begin(), v.end()); };
  append(fixture::random_bytes(kCode, 1));
  append(const_table(kConst, 2));
  append(runs_at_least(kInit, 20, 3));
  append(fixture::random_bytes(kUnlisted, 4));
  const std::uint32_t code_at = kBase;
  const std::uint32_t const_at = code_at + kCode;
  const std::uint32_t init_at = const_at + kConst;
  const std::uint32_t zero_at = 0xD0000000u;

  RomImage built = image_from_binary(flash, kBase);
  built.entry_point = kBase;
  const RomImage image = parse_ihex(format_ihex(built));
  if (!(image == built)) return {false, "Intel HEX round trip changed the image"};

  SectionManifest m;
  m.entries = {{"text", SectionKind::Code, code_at, code_at + kCode, false},
               {"rodata", SectionKind::Const, const_at, const_at + kConst, true},
               {"data", SectionKind::Initvars, init_at, init_at + kInit, true},
               {"bss", SectionKind::Zerovars, zero_at, zero_at + kZero, true}};
  const auto catalog = DeviceCatalog::tricore();
  const auto stubs = StubTable::defaults();
  const FitReport before = fit_report(compress_image(image, m, CompressionPolicy::uncompressed()), catalog, stubs);
  const CompressedImage packed = compress_image(image, m, CompressionPolicy::defaults());
  for (const auto& s : packed.sections) {
    const auto back = decompress_section(s);
    if (s.entry.kind == SectionKind::Zerovars) {
      if (back != std::vector<std::uint8_t>(s.raw_bytes, 0)) return {false, "zerovars did not expand to zero fill"};
    } else {
      const auto src = *image.slice(s.entry.start, s.entry.end);
      if (back != std::vector<std::uint8_t>(src.begin(), src.end())) return {false, s.entry.name + " did not round-trip"};
    }
  }
  const FitReport after = fit_report(packed, catalog, stubs);

  std::uint64_t sum = after.unlisted_bytes;
  for (const auto& s : after.sections) sum += s.compressed_bytes;
  std::string stub_list;
  for (const auto& [algo, bytes] : after.stub_overheads) {
    sum += bytes;
    stub_list += fmt("%s=%llu ", std::string(algo_name(algo)).c_str(), static_cast<unsigned long long>(bytes));
  }
  const bool ok = before.raw_total_bytes == 1153434 && before.chosen_device == std::optional<std::string>("TC1738") &&
                  after.chosen_device == std::optional<std::string>("TC1734") && after.total_bytes <= kTc1734 &&
                  sum == after.total_bytes && after.stub_overheads.size() == 2 &&
                  after.unlisted_bytes == kUnlisted;
  return {ok, fmt("raw %llu B -> %s; packed %llu B -> %s; stubs %s; sum identity %s",
                  static_cast<unsigned long long>(before.raw_total_bytes),
                  before.chosen_device.value_or("none").c_str(), static_cast<unsigned long long>(after.total_bytes),
                  after.chosen_device.value_or("none").c_str(), stub_list.c_str(),
                  sum == after.total_bytes ? "holds" : "broken")};
}

Outcome criterion_3() {
  SectionManifest m;
  m.entries = {{"data", SectionKind::Initvars, 0, 102400, true},
               {"bss", SectionKind::Zerovars, 0x100000, 0x100000 + 102400, true}};
  const auto runs = runs_at_least(102400, 20, 9);
  std::size_t run_count = 1;
  for (std::size_t i = 1; i < runs.size(); ++i) run_count += runs[i] != runs[i - 1];
  const double mean_run = 102400.0 / static_cast<double>(run_count);
  const FitReport r = fit_report(compress_image(image_from_binary(runs, 0), m, CompressionPolicy::defaults()),
                                 DeviceCatalog::tricore(), StubTable::defaults());
  const auto& init = r.sections[0];
  const auto& zero = r.sections[1];
  const std::uint64_t saved = zero.raw_bytes - zero.compressed_bytes;
  const bool ok = mean_run >= 20.0 && init.algo == Algo::Rle && init.ratio >= kRleRunRatioMin &&
                  zero.ratio >= kRleZeroRatioMin && saved >= kRleZeroSavedMin;
  return {ok, fmt("mean run %.1f -> %s; zero section %llu -> %llu B (%s), saved %llu B (min %llu)", mean_run,
                  format_ratio(init.ratio).c_str(), static_cast<unsigned long long>(zero.raw_bytes),
                  static_cast<unsigned long long>(zero.compressed_bytes), format_ratio(zero.ratio).c_str(),
                  static_cast<unsigned long long>(saved), static_cast<unsigned long long>(kRleZeroSavedMin))};
}

double ratio_of(const Codestream& c) {
  return static_cast<double>(c.original_len) / static_cast<double>(c.payload.size());
}

Outcome criterion_4() {
  const double scale = 1.0 / 2047;
  const Signal clean_v = gen_sine({1.0, 60.0, 0.0, 15360.0}, 2560);
  const QuantizedSignal clean = quantize(clean_v, scale);
  const auto analysis = predictive_analyze(clean, 256, kDefaultTemplates);
  std::size_t nonzero = 0;
  for (std::size_t k = 256; k < analysis.residuals.size(); ++k) nonzero += analysis.residuals[k] != 0;
  const Codestream c = predictive_encode(clean);
  const std::size_t period = read_predictive_model(c).period;
  const double r_pred = ratio_of(c);
  const double r_lzw = ratio_of(lzw_encode(clean.to_bytes()));
  const bool clean_lossless = predictive_decode(c) == clean;

  const Signal noisy_v = add_noise(clean_v, kNoisySnrDb, 1);
  const double snr = 10.0 * std::log10(kernels::sum_squares(clean_v.samples()) /
                                       kernels::sum_sq_diff(clean_v.samples(), noisy_v.samples()));
  const QuantizedSignal noisy = quantize(noisy_v, scale);
  PredictiveParams p;
  p.period = 256;
  const Codestream cn = predictive_encode(noisy, p);
  const double r_noisy = ratio_of(cn);
  const bool noisy_lossless = predictive_decode(cn) == noisy;

  const bool ok = period == 256 && nonzero == 0 && clean_lossless && r_pred >= kPredictiveRatioMin &&
                  r_pred > r_lzw && std::fabs(snr - kNoisySnrDb) <= kSnrExactTol && noisy_lossless &&
                  r_noisy < r_pred;
  return {ok, fmt("period %zu, %zu nonzero residuals after warm-up, predictive %s vs lzw %s; "
                  "at %.4f dB SNR %s, lossless %s",
                  period, nonzero, format_ratio(r_pred).c_str(), format_ratio(r_lzw).c_str(), snr,
                  format_ratio(r_noisy).c_str(), noisy_lossless ? "yes" : "no")};
}

Outcome criterion_5() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_err = 0.0;
  double worst_energy = 0.0;
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x(1024);
    for (auto& v : x) v = u(rng);
    const Signal s(x, 15360.0);
    const auto d = dwt(s, 5);
    const Signal back = idwt(d);
    for (std::size_t k = 0; k < x.size(); ++k) worst_err = std::max(worst_err, std::fabs(back[k] - x[k]));
    const auto flat = flatten(d);
    const double ein = kernels::sum_squares(x);
    worst_energy = std::max(worst_energy, std::fabs(kernels::sum_squares(flat) - ein) / ein);
  }
  double worst_detail = 0.0;
  for (double level_value : {1.0, -0.3, 123.0}) {
    const auto d = dwt(Signal(std::vector<double>(1024, level_value), 15360.0), 5);
    for (const auto& band : d.details) {
      for (double c : band) worst_detail = std::max(worst_detail, std::fabs(c));
    }
  }
  double worst_filter = 0.0;
  for (double r : d4_equation_residuals(d4_filters())) worst_filter = std::max(worst_filter, std::fabs(r));

  const Signal dip = gen_voltage_dip({1.0, 60.0, 0.0, 15360.0}, 1024, 1792, 0.5, 4096);
  const Codestream c = wavelet_compress(dip, {kDipRatioTarget, 12});
  const double ratio = ratio_of(c);
  const double nmse = distortion(dip, wavelet_decompress(c)).nmse;

  // Vanishing moment: a constant leaves round-off only, far below any signal content.
  const bool ok = worst_err <= kReconstructionTol && worst_energy <= kEnergyTol && worst_detail <= 1e-12 * 123.0 &&
                  worst_filter <= kFilterTol && ratio >= kDipRatioTarget && nmse <= kDipNmseMax;
  return {ok, fmt("max reconstruction error %.2e, energy error %.2e, constant-signal |detail| %.2e, "
                  "filter residual %.2e; dip %s at NMSE %.2e (max %.0e)",
                  worst_err, worst_energy, worst_detail, worst_filter, format_ratio(ratio).c_str(), nmse,
                  kDipNmseMax)};
}

Outcome criterion_6() {
  const Signal s = gen_sine({10.0, 60.0, 0.5, 15360.0}, 7680);
  const FundamentalParams p = estimate_fundamental(s);
  const double df = std::fabs(p.freq_hz - 60.0);
  const double da = std::fabs(p.amplitude - 10.0) / 10.0;
  const double dphi = std::fabs(std::remainder(p.phase_rad - 0.5, 2.0 * M_PI));
  const double residue = kernels::sum_squares(subtract_fundamental(s, p).samples()) / kernels::sum_squares(s.samples());

  const Signal t = gen_transients({1.0, 60.0, 0.0, 15360.0}, {1024, 0.3, 0.98, 1000.0}, 7680);
  const Codestream c = hybrid_encode(t, {kHybridRatioTarget, 12});
  const double ratio = ratio_of(c);
  const double snr = distortion(t, hybrid_decode(c)).snr_db;

  const bool ok = df <= kFreqTolHz && da <= kAmpTolRel && dphi <= kPhaseTolRad && residue <= kResidueNmseMax &&
                  ratio >= kHybridRatioTarget && snr >= kHybridSnrMin;
  return {ok, fmt("|df| %.2e Hz, |dA|/A %.2e, |dphi| %.2e rad, residue NMSE %.2e; transients %s at SNR %.1f dB",
                  df, da, dphi, residue, format_ratio(ratio).c_str(), snr)};
}

Outcome criterion_7() {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  double worst_prd = 0.0;
  double worst_snr = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng() % 2000;
    const double noise = std::pow(10.0, -static_cast<double>(rng() % 10) / 2.0);
    std::vector<double> x(n);
    std::vector<double> y(n);
    for (std::size_t k = 0; k < n; ++k) {
      x[k] = g(rng);
      y[k] = x[k] + noise * g(rng);
    }
    const DistortionReport r = distortion(x, y);
    worst_prd = std::max(worst_prd, std::fabs(r.prd_pct - 100.0 * std::sqrt(r.nmse)) / r.prd_pct);
    worst_snr = std::max(worst_snr, std::fabs(r.snr_db + r.mse_db));
  }
  const std::vector<double> x{0.3, -1.2, 2.5, 0.0, 4.0};
  const DistortionReport z = distortion(x, std::vector<double>(x.size(), 0.0));
  const bool zero_ok = z.nmse == 1.0 && z.mse_db == 0.0 && z.prd_pct == 100.0 && z.snr_db == 0.0;
  return {worst_prd <= kMetricsTol && worst_snr <= kMetricsTol && zero_ok,
          fmt("1000 pairs: max prd error %.1e, max |snr + mse_db| %.1e; x_hat = 0 gives (%g, %g dB, %g%%, %g dB)",
              worst_prd, worst_snr, z.nmse, z.mse_db, z.prd_pct, z.snr_db)};
}

Outcome criterion_8() {
  std::mt19937_64 rng(8);
  std::size_t runs = 0;
  std::size_t traffic_violations = 0;
  std::size_t memory_mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t len = 256 + rng() % 32768;
    std::vector<std::uint8_t> bytes;
    switch (t % 4) {
      case 0: bytes = fixture::random_bytes(len, rng()); break;
      case 1: bytes = fixture::run_bytes(len, 64, rng()); break;
      case 2: bytes = fixture::text_bytes(len, rng()); break;
      default: bytes = fixture::sparse_bytes(len, rng()); break;
    }
    const MemoryImage img{static_cast<std::uint32_t>(rng() % 0x10000) * 16, std::move(bytes)};
    CacheConfig cfg;
    cfg.line_bytes = std::size_t{16} << (rng() % 3);
    cfg.sets = std::size_t{1} << (rng() % 6);
    cfg.ways = 1 + rng() % 4;
    cfg.slot_bytes = rng() % 2 ? 8 : 12;
    cfg.codec = std::array{Algo::Rle, Algo::Lzss, Algo::Lzar}[rng() % 3];
    std::vector<Access> trace(1 + rng() % 4000);
    for (auto& a : trace) {
      a.op = rng() % 3 == 0 ? AccessOp::Write : AccessOp::Read;
      a.address = img.base + rng() % img.bytes.size();
      a.value = static_cast<std::uint8_t>(rng());
    }
    const auto r = run_trace(img, trace, cfg);
    ++runs;
    if (r.stats.bytes_compressed > r.stats.bytes_uncompressed_equiv) ++traffic_violations;
    if (r.final_memory != oracle::final_memory(img, trace)) ++memory_mismatches;
  }

  const MemoryImage zero{0, std::vector<std::uint8_t>(65536, 0)};
  std::vector<Access> sweep;
  for (std::uint64_t a = 0; a < zero.bytes.size(); a += 8) sweep.push_back({AccessOp::Read, a, 0});
  const SlotSweep zs = sweep_slots(zero, sweep, {});
  const MemoryImage noise{0, fixture::random_bytes(65536, 88)};
  const auto nr = run_trace(noise, sweep, {});

  const bool ok = traffic_violations == 0 && memory_mismatches == 0 &&
                  zs.s12.stats.reduction_pct >= kZeroImageReductionMin && nr.stats.reduction_pct == 0.0 &&
                  zs.s8.stats.bytes_compressed <= zs.s12.stats.bytes_compressed;
  return {ok, fmt("%zu fuzzed runs: %zu traffic violations, %zu memory mismatches; zero image %.1f%% (S=12), "
                  "S=8 %llu B <= S=12 %llu B; random image %.1f%%",
                  runs, traffic_violations, memory_mismatches, zs.s12.stats.reduction_pct,
                  static_cast<unsigned long long>(zs.s8.stats.bytes_compressed),
                  static_cast<unsigned long long>(zs.s12.stats.bytes_compressed), nr.stats.reduction_pct)};
}

Outcome criterion_9() {
  std::mt19937_64 rng(9);
  std::vector<std::vector<std::uint8_t>> containers;
  for (Algo a : {Algo::Rle, Algo::Lzw, Algo::Lzss, Algo::Lzar}) {
    containers.push_back(wrap(encode_bytes(a, fixture::text_bytes(4000, 1))));
    containers.push_back(wrap(encode_bytes(a, fixture::run_bytes(6000, 50, 2))));
  }
  containers.push_back(wrap(predictive_encode(quantize(gen_sine({}, 2560), 1.0 / 2047))));
  containers.push_back(wrap(predictive_encode(quantize(add_noise(gen_sine({}, 2560), 34.2, 3), 1.0 / 2047),
                                              PredictiveParams{256, 4, 8, std::nullopt})));
  std::size_t missed = 0;
  std::size_t checksum = 0;
  std::size_t corrupt = 0;
  for (std::size_t i = 0; i < kCorruptions; ++i) {
    auto bad = containers[i % containers.size()];
    const std::size_t payload_bits = (bad.size() - kContainerHeaderSize) * 8;
    const std::size_t bit = kContainerHeaderSize * 8 + rng() % payload_bits;
    bad[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    const auto code = fixture::errc_of([&] {
      const Codestream c = unwrap(bad);
      if (c.algo == Algo::Predictive) {
        predictive_decode(c);
      } else {
        decode_bytes(c);
      }
    });
    if (code == Errc::ChecksumMismatch) {
      ++checksum;
    } else if (code == Errc::CorruptStream) {
      ++corrupt;
    } else {
      ++missed;
    }
  }
  return {missed == 0, fmt("%zu single-bit payload corruptions: %zu ChecksumMismatch, %zu CorruptStream, %zu missed",
                           kCorruptions, checksum, corrupt, missed)};
}

int run_cli(const std::string& args, const fs::path& stdout_file) {
  const std::string cmd = std::string("\"") + SQZ_CLI + "\" " + args + " > \"" + stdout_file.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome criterion_10() {
  const fs::path root = fs::temp_directory_path() / ("sqz_accept_" + std::to_string(::getpid()));
  fs::remove_all(root);
  const fs::path corpus = fixture::source_dir() / "tests" / "corpus";
  const std::string fw = (corpus / "firmware.bin").string();
  const std::string manifest = (corpus / "manifest.json").string();

  struct Step {
    std::string name;
    std::string args;  // {d} is replaced by the run directory
  };
  const std::vector<Step> steps = {
      {"gen", "--seed 42 gen transients --n 7680 --snr 30 -o {d}/t.csv"},
      {"gen_q", "--seed 42 gen sine --n 2560 --snr 34.2 --scale 0.0004885197850512946 -o {d}/q.csv"},
      {"gen_dip", "gen dip --n 4096 --start 1024 --end 1792 -o {d}/d.csv"},
      {"compress_lzar", "compress " + fw + " --algo lzar -o {d}/fw.sqz"},
      {"compress_pred", "compress {d}/q.csv --algo predictive --verify -o {d}/q.sqz"},
      {"compress_wave", "compress {d}/d.csv --algo wavelet --ratio 6 -o {d}/d.sqz"},
      {"compress_hyb", "compress {d}/t.csv --algo hybrid --ratio 8 -o {d}/t.sqz"},
      {"decompress", "decompress {d}/fw.sqz -o {d}/fw.out"},
      {"decompress_hyb", "decompress {d}/t.sqz -o {d}/t.out.csv"},
      {"metrics", "metrics {d}/t.csv {d}/t.out.csv"},
      {"plotdata", "plotdata {d}/q.csv --algo predictive"},
      {"plotdata_hyb", "plotdata {d}/t.csv --algo hybrid --ratio 8"},
      {"romfit", "romfit " + fw + " --manifest " + manifest + " --base 0x80000000"},
      {"memsim", "memsim --image " + fw + " --trace {d}/trace.csv --base 0x80000000 --codec lzss --sweep"},
  };

  std::string trace;
  std::mt19937_64 rng(10);
  for (int i = 0; i < 3000; ++i) {
    trace += fmt("%c,%llx\n", rng() % 3 ? 'R' : 'W', static_cast<unsigned long long>(0x80000000ull + rng() % 16384));
  }

  std::size_t compared = 0;
  std::vector<std::string> differing;
  std::vector<std::string> errors;
  for (int run = 0; run < 2; ++run) {
    const fs::path d = root / std::to_string(run);
    fs::create_directories(d);
    write_file_atomic(d / "trace.csv", trace);
    for (const auto& s : steps) {
      std::string args = s.args;
      for (std::size_t at; (at = args.find("{d}")) != std::string::npos;) args.replace(at, 3, d.string());
      if (run_cli(args, d / (s.name + ".stdout")) != 0) errors.push_back(s.name);
    }
  }
  for (const auto& entry : fs::directory_iterator(root / "0")) {
    const fs::path other = root / "1" / entry.path().filename();
    ++compared;
    if (!fs::exists(other) || read_file_bytes(entry.path()) != read_file_bytes(other)) {
      // Run directories differ by name only inside reports that echo paths; none do.
      differing.push_back(entry.path().filename().string());
    }
  }
  fs::remove_all(root);
  std::string detail = fmt("%zu subcommand runs twice, %zu output files compared, %zu differ, %zu nonzero exits",
                           steps.size(), compared, differing.size(), errors.size());
  for (const auto& n : differing) detail += " diff:" + n;
  for (const auto& n : errors) detail += " exit:" + n;
  return {differing.empty() && errors.empty() && compared >= steps.size(), detail};
}

}  // namespace

int main() {
  std::printf("kernel table: %s\n", std::string(kernels::isa_name(kernels::active().isa)).c_str());
  report(1, "lossless fuzz round-trip", criterion_1);
  report(2, "ROM device fit TC1738 -> TC1734", criterion_2);
  report(3, "RLE initvars and zerovars", criterion_3);
  report(4, "predictive coder on a periodic signal", criterion_4);
  report(5, "wavelet transform and 6:1 dip coding", criterion_5);
  report(6, "hybrid fundamental estimation and coding", criterion_6);
  report(7, "metrics algebra", criterion_7);
  report(8, "compressed-memory traffic properties", criterion_8);
  report(9, "container corruption detection", criterion_9);
  report(10, "CLI determinism", criterion_10);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
