#include "sqz/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sqz/codecs.hpp"
#include "sqz/error.hpp"
#include "sqz/hybrid.hpp"
#include "sqz/memsim.hpp"
#include "sqz/metrics.hpp"
#include "sqz/periodic.hpp"
#include "sqz/romtool.hpp"
#include "sqz/signal.hpp"
#include "sqz/signal_io.hpp"
#include "sqz/wavelet.hpp"

namespace sqz::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// Raised for argument problems found after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string output;
};

struct GenArgs {
  std::string kind;
  double freq = kDefaultFundamentalHz;
  double fs = kDefaultSampleRateHz;
  std::size_t n = 7680;
  double amplitude = 1.0;
  double phase = 0.0;
  std::size_t start = 0;
  std::size_t end = 0;
  double factor = 0.5;
  std::size_t period = 1024;
  double t_amplitude = 0.3;
  double decay = 0.98;
  double t_freq = 1000.0;
  std::optional<double> snr;
  std::optional<double> scale;
};

struct CodecArgs {
  std::string input;
  std::string algo;
  double ratio = 6.0;
  unsigned bits = 12;
  std::optional<std::size_t> period;
  std::size_t templates = kDefaultTemplates;
  std::optional<double> scale;
  double band_lo = 40.0;
  double band_hi = 80.0;
  bool segment = false;
  bool verify = false;
};

struct MetricsArgs {
  std::string reference;
  std::string test;
};

struct RomArgs {
  std::string image;
  std::string manifest;
  std::string catalog;
  std::string policy;
  std::string stubs;
  std::string base = "0";
};

struct MemArgs {
  std::string image;
  std::string trace;
  std::string base = "0";
  std::size_t line = 32;
  std::size_t sets = 64;
  std::size_t ways = 4;
  std::size_t slot = 12;
  std::string codec = "rle";
  bool sweep = false;
};

void require_file(const std::string& path, const std::string& flag) {
  std::error_code ec;
  if (path.empty() || !fs::is_regular_file(path, ec)) throw UsageError(flag + ": no such file '" + path + "'");
}

std::uint32_t parse_u32(const std::string& text, const std::string& flag) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || v > 0xFFFFFFFFull) throw UsageError(flag + ": not a 32-bit address");
  return static_cast<std::uint32_t>(v);
}

Algo parse_algo_flag(const std::string& name) {
  const auto a = parse_algo(name);
  if (!a) throw UsageError("--algo: unknown algorithm '" + name + "'");
  return *a;
}

// Flat "key,value" rendering of a JSON object's scalar members; nested
// objects are prefixed with their key.
void flatten_csv(const Json& j, const std::string& prefix, std::string& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      flatten_csv(*it, key, out);
    } else if (it->is_array()) {
      for (std::size_t i = 0; i < it->size(); ++i) {
        const Json& e = (*it)[i];
        if (e.is_object()) {
          flatten_csv(e, key + "." + std::to_string(i), out);
        } else {
          out += key + "." + std::to_string(i) + "," + (e.is_string() ? e.get<std::string>() : e.dump()) + "\n";
        }
      }
    } else {
      out += key + "," + (it->is_string() ? it->get<std::string>() : it->dump()) + "\n";
    }
  }
}

std::string render_json_report(const Json& j, const std::string& format) {
  if (format == "csv") {
    std::string out = "key,value\n";
    flatten_csv(j, "", out);
    return out;
  }
  if (format == "table") {
    std::string out;
    std::string flat;
    flatten_csv(j, "", flat);
    std::istringstream lines(flat);
    std::string line;
    while (std::getline(lines, line)) {
      const auto comma = line.find(',');
      std::string key = line.substr(0, comma);
      key.resize(std::max<std::size_t>(key.size(), 32), ' ');
      out += key + " " + line.substr(comma + 1) + "\n";
    }
    return out;
  }
  return j.dump(2) + "\n";
}

void emit(const std::string& text, const Globals& g, std::ostream& out) {
  if (g.output.empty()) {
    out << text;
  } else {
    write_file_atomic(g.output, text);
  }
}

Signal load_signal(const std::string& path) { return parse_signal_csv(read_file_text(path)); }

QuantizedSignal load_quantized(const std::string& path, const std::optional<double>& scale) {
  const std::string text = read_file_text(path);
  if (csv_has_scale(text)) return parse_quantized_csv(text);
  if (!scale) throw UsageError("--scale: input has no '# scale=' header; give --scale to quantize it");
  return quantize(parse_signal_csv(text), *scale);
}

LossyPlan plan_from(const CodecArgs& a) {
  LossyPlan p{a.ratio, a.bits};
  try {
    p.validate();
  } catch (const Error& e) {
    throw UsageError(std::string("--ratio/--bits: ") + e.what());
  }
  return p;
}

HybridOptions hybrid_options(const CodecArgs& a) {
  HybridOptions o;
  o.fundamental.band = {a.band_lo, a.band_hi};
  o.fundamental.segment = a.segment;
  return o;
}

// ---- gen ----

int cmd_gen(const GenArgs& a, const Globals& g, std::ostream& out) {
  SineSpec base{a.amplitude, a.freq, a.phase, a.fs};
  std::optional<Signal> s;
  if (a.kind == "sine") {
    s = gen_sine(base, a.n);
  } else if (a.kind == "dip") {
    const std::size_t end = a.end == 0 ? a.n : a.end;
    s = gen_voltage_dip(base, a.start, end, a.factor, a.n);
  } else if (a.kind == "transients") {
    s = gen_transients(base, TransientSpec{a.period, a.t_amplitude, a.decay, a.t_freq}, a.n);
  } else {
    throw UsageError("gen: kind must be sine, dip or transients");
  }
  if (a.snr) s = add_noise(*s, *a.snr, g.seed);
  if (a.scale) {
    emit(format_quantized_csv(quantize(*s, *a.scale)), g, out);
  } else {
    emit(format_signal_csv(*s), g, out);
  }
  return kExitOk;
}

// ---- compress / decompress ----

struct Encoded {
  Codestream stream;
  std::optional<DistortionReport> distortion;
  std::vector<std::uint8_t> source_bytes;  // lossless sources, for --verify
  std::optional<QuantizedSignal> quantized;
};

Encoded encode_input(const CodecArgs& a, Algo algo) {
  Encoded e;
  switch (algo) {
    case Algo::Rle:
    case Algo::Lzw:
    case Algo::Lzss:
    case Algo::Lzar:
      e.source_bytes = read_file_bytes(a.input);
      e.stream = encode_bytes(algo, e.source_bytes);
      break;
    case Algo::Predictive: {
      e.quantized = load_quantized(a.input, a.scale);
      PredictiveParams p;
      p.period = a.period;
      p.templates = a.templates;
      e.stream = predictive_encode(*e.quantized, p);
      break;
    }
    case Algo::Wavelet: {
      const Signal s = load_signal(a.input);
      e.stream = wavelet_compress(s, plan_from(a));
      e.distortion = distortion(s, wavelet_decompress(e.stream));
      break;
    }
    case Algo::Hybrid: {
      const Signal s = load_signal(a.input);
      e.stream = hybrid_encode(s, plan_from(a), hybrid_options(a));
      e.distortion = distortion(s, hybrid_decode(e.stream));
      break;
    }
  }
  return e;
}

void verify(const Encoded& e, const std::vector<std::uint8_t>& container) {
  const Codestream back = unwrap(container);
  switch (back.algo) {
    case Algo::Predictive:
      if (!(predictive_decode(back) == *e.quantized)) fail(Errc::CorruptStream, "verification: decoded signal differs");
      break;
    case Algo::Wavelet:
      wavelet_decompress(back);
      break;
    case Algo::Hybrid:
      hybrid_decode(back);
      break;
    default:
      if (decode_bytes(back) != e.source_bytes) fail(Errc::CorruptStream, "verification: decoded bytes differ");
  }
}

int cmd_compress(const CodecArgs& a, const Globals& g, std::ostream& out) {
  const Algo algo = parse_algo_flag(a.algo);
  if (g.output.empty()) throw UsageError("-o: compress needs an output path");
  const Encoded e = encode_input(a, algo);
  const std::vector<std::uint8_t> container = wrap(e.stream);
  if (a.verify) verify(e, container);
  write_file_atomic(g.output, container);

  const RatioReport r = compression_ratio(e.stream.original_len, e.stream.payload.size());
  Json j;
  j["algo"] = algo_name(algo);
  j["original_bytes"] = e.stream.original_len;
  j["payload_bytes"] = e.stream.payload.size();
  j["container_bytes"] = container.size();
  j["ratio"] = r.ratio;
  j["ratio_display"] = r.display;
  if (algo == Algo::Predictive) j["period"] = read_predictive_model(e.stream).period;
  if (algo == Algo::Wavelet) j["header_nmse"] = read_wavelet_header(e.stream.payload).nmse;
  if (e.distortion) j["distortion"] = to_json(*e.distortion);
  j["verified"] = a.verify;
  out << render_json_report(j, g.format);
  return kExitOk;
}

int cmd_decompress(const std::string& input, const Globals& g, std::ostream& out) {
  if (g.output.empty()) throw UsageError("-o: decompress needs an output path");
  const Codestream c = unwrap(read_file_bytes(input));
  switch (c.algo) {
    case Algo::Predictive:
      write_file_atomic(g.output, format_quantized_csv(predictive_decode(c)));
      break;
    case Algo::Wavelet:
      write_file_atomic(g.output, format_signal_csv(wavelet_decompress(c)));
      break;
    case Algo::Hybrid:
      write_file_atomic(g.output, format_signal_csv(hybrid_decode(c)));
      break;
    default:
      write_file_atomic(g.output, decode_bytes(c));
  }
  Json j;
  j["algo"] = algo_name(c.algo);
  j["original_bytes"] = c.original_len;
  j["payload_bytes"] = c.payload.size();
  out << render_json_report(j, g.format);
  return kExitOk;
}

// ---- metrics ----

int cmd_metrics(const MetricsArgs& a, const Globals& g, std::ostream& out) {
  const Signal x = load_signal(a.reference);
  const Signal xhat = load_signal(a.test);
  emit(render_json_report(to_json(distortion(x, xhat)), g.format), g, out);
  return kExitOk;
}

// ---- plotdata ----

std::string cell(double v) { return format_real(v); }

int cmd_plotdata(const CodecArgs& a, const Globals& g, std::ostream& out) {
  const Algo algo = parse_algo_flag(a.algo);
  std::vector<double> original;
  std::vector<double> coding;
  std::vector<double> decoded;

  switch (algo) {
    case Algo::Predictive: {
      const QuantizedSignal q = load_quantized(a.input, a.scale);
      const Codestream c = predictive_encode(q, {a.period, a.templates, kDefaultMinPeriod, std::nullopt});
      const PeriodicModel m = read_predictive_model(c);
      const PredictiveAnalysis pa = predictive_analyze(q, m.period, m.templates);
      const Signal x = dequantize(q);
      const Signal y = dequantize(predictive_decode(c));
      original.assign(x.samples().begin(), x.samples().end());
      decoded.assign(y.samples().begin(), y.samples().end());
      for (std::int32_t r : pa.residuals) coding.push_back(static_cast<double>(r));
      break;
    }
    case Algo::Wavelet: {
      const Signal s = load_signal(a.input);
      const Codestream c = wavelet_compress(s, plan_from(a));
      const Signal y = wavelet_decompress(c);
      original.assign(s.samples().begin(), s.samples().end());
      decoded.assign(y.samples().begin(), y.samples().end());
      coding = wavelet_payload_coefficients(c.payload);
      break;
    }
    case Algo::Hybrid: {
      const Signal s = load_signal(a.input);
      const Codestream c = hybrid_encode(s, plan_from(a), hybrid_options(a));
      const HybridHeader h = read_hybrid_header(c.payload);
      const Signal residue = subtract_fundamental(s, h.params);
      const Signal y = hybrid_decode(c);
      original.assign(s.samples().begin(), s.samples().end());
      coding.assign(residue.samples().begin(), residue.samples().end());
      decoded.assign(y.samples().begin(), y.samples().end());
      break;
    }
    default: {
      const std::vector<std::uint8_t> bytes = read_file_bytes(a.input);
      const Codestream c = encode_bytes(algo, bytes);
      const std::vector<std::uint8_t> back = decode_bytes(c);
      for (std::uint8_t b : bytes) original.push_back(b);
      for (std::uint8_t b : c.payload) coding.push_back(b);
      for (std::uint8_t b : back) decoded.push_back(b);
    }
  }

  std::string csv = "original,coding_output,decoding_output,error\n";
  const std::size_t rows = std::max(original.size(), coding.size());
  for (std::size_t k = 0; k < rows; ++k) {
    if (k < original.size()) {
      csv += cell(original[k]);
      csv += ',';
      csv += k < coding.size() ? cell(coding[k]) : std::string();
      csv += ',' + cell(decoded[k]) + ',' + cell(original[k] - decoded[k]) + '\n';
    } else {
      csv += "," + cell(coding[k]) + ",,\n";
    }
  }
  emit(csv, g, out);
  return kExitOk;
}

// ---- romfit ----

int cmd_romfit(const RomArgs& a, const Globals& g, std::ostream& out) {
  const std::string ext = fs::path(a.image).extension().string();
  const RomImage image = (ext == ".hex" || ext == ".ihex")
                             ? parse_ihex(read_file_text(a.image))
                             : image_from_binary(read_file_bytes(a.image), parse_u32(a.base, "--base"));
  const SectionManifest manifest = parse_manifest(read_file_text(a.manifest));
  const DeviceCatalog catalog = a.catalog.empty() ? DeviceCatalog::tricore() : parse_catalog(read_file_text(a.catalog));
  const CompressionPolicy policy = parse_policy(a.policy);
  const StubTable stubs = parse_stub_overrides(a.stubs);

  const FitReport baseline = fit_report(compress_image(image, manifest, CompressionPolicy::uncompressed()), catalog, stubs);
  const CompressedImage packed = compress_image(image, manifest, policy);
  for (const auto& s : packed.sections) {
    if (s.entry.kind == SectionKind::Zerovars) {
      if (decompress_section(s) != std::vector<std::uint8_t>(s.raw_bytes, 0)) {
        fail(Errc::CorruptStream, "section '" + s.entry.name + "' does not decompress to zero fill");
      }
    } else if (decompress_section(s) != std::vector<std::uint8_t>(image.slice(s.entry.start, s.entry.end)->begin(),
                                                                   image.slice(s.entry.start, s.entry.end)->end())) {
      fail(Errc::CorruptStream, "section '" + s.entry.name + "' does not decompress to its source bytes");
    }
  }
  const FitReport compressed = fit_report(packed, catalog, stubs);

  std::string text;
  if (g.format == "table") {
    text = "== baseline (uncompressed) ==\n" + format_table(baseline) + "\n== compressed ==\n" + format_table(compressed);
  } else {
    Json j;
    j["baseline"] = to_json(baseline);
    j["compressed"] = to_json(compressed);
    text = render_json_report(j, g.format);
  }
  emit(text, g, out);
  return compressed.chosen_device ? kExitOk : kExitNoFit;
}

// ---- memsim ----

int cmd_memsim(const MemArgs& a, const Globals& g, std::ostream& out) {
  MemoryImage image{parse_u32(a.base, "--base"), read_file_bytes(a.image)};
  const std::vector<Access> trace = parse_trace(read_file_text(a.trace));
  CacheConfig cfg;
  cfg.line_bytes = a.line;
  cfg.sets = a.sets;
  cfg.ways = a.ways;
  cfg.slot_bytes = a.slot;
  const auto codec = parse_algo(a.codec);
  if (!codec) throw UsageError("--codec: unknown codec '" + a.codec + "'");
  cfg.codec = *codec;
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  Json j;
  j["config"] = to_json(cfg);
  if (a.sweep) {
    const SlotSweep s = sweep_slots(image, trace, cfg);
    j["s8"] = to_json(s.s8.stats);
    j["s12"] = to_json(s.s12.stats);
    j["delta_bytes"] = s.delta_bytes;
  } else {
    j["stats"] = to_json(run_trace(image, trace, cfg).stats);
  }
  emit(render_json_report(j, g.format), g, out);
  return kExitOk;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::ChecksumMismatch:
    case Errc::BadChecksum:
      return kExitIntegrity;
    case Errc::IoError:
      return kExitUsage;
    default:
      return kExitProcessing;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"sqz: compression toolkit for firmware images and power-quality signals", "sqz"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Seed for noise generation")->capture_default_str();
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "table", "csv"}))->capture_default_str();
  app.add_option("-o,--output", g.output, "Output path (stdout when omitted, where allowed)");

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "Generate a test signal as CSV");
  c_gen->add_option("kind", gen.kind, "sine, dip or transients")->required()->check(CLI::IsMember({"sine", "dip", "transients"}));
  c_gen->add_option("--freq", gen.freq, "Fundamental frequency (Hz)")->capture_default_str();
  c_gen->add_option("--fs", gen.fs, "Sample rate (Hz)")->capture_default_str();
  c_gen->add_option("--n", gen.n, "Number of samples")->capture_default_str();
  c_gen->add_option("--amplitude", gen.amplitude, "Fundamental amplitude")->capture_default_str();
  c_gen->add_option("--phase", gen.phase, "Fundamental phase (rad)")->capture_default_str();
  c_gen->add_option("--start", gen.start, "Dip start sample")->capture_default_str();
  c_gen->add_option("--end", gen.end, "Dip end sample (exclusive; 0 = n)")->capture_default_str();
  c_gen->add_option("--factor", gen.factor, "Dip amplitude factor in (0, 1]")->capture_default_str();
  c_gen->add_option("--period", gen.period, "Samples between transient onsets")->capture_default_str();
  c_gen->add_option("--t-amplitude", gen.t_amplitude, "Transient amplitude")->capture_default_str();
  c_gen->add_option("--decay", gen.decay, "Transient per-sample decay")->capture_default_str();
  c_gen->add_option("--t-freq", gen.t_freq, "Transient ring frequency (Hz)")->capture_default_str();
  c_gen->add_option("--snr", gen.snr, "Add Gaussian noise at this SNR (dB), seeded by --seed");
  c_gen->add_option("--scale", gen.scale, "Quantize with this many volts per count");

  CodecArgs comp;
  auto add_codec_flags = [](CLI::App* c, CodecArgs& a) {
    c->add_option("input", a.input, "Input file")->required();
    c->add_option("--algo", a.algo, "rle, lzw, lzss, lzar, predictive, wavelet or hybrid")->required();
    c->add_option("--ratio", a.ratio, "Target ratio for lossy coders")->capture_default_str();
    c->add_option("--bits", a.bits, "Quantizer bits for lossy coders")->capture_default_str();
    c->add_option("--period", a.period, "Predictive period (estimated when omitted)");
    c->add_option("--templates", a.templates, "Predictive dictionary size")->capture_default_str();
    c->add_option("--scale", a.scale, "Quantization step for unquantized predictive input");
    c->add_option("--band-lo", a.band_lo, "Hybrid search band low edge (Hz)")->capture_default_str();
    c->add_option("--band-hi", a.band_hi, "Hybrid search band high edge (Hz)")->capture_default_str();
    c->add_flag("--segment", a.segment, "Hybrid: restrict the fundamental to its dominant segment");
  };
  auto* c_comp = app.add_subcommand("compress", "Compress a file into an SQZ1 container");
  add_codec_flags(c_comp, comp);
  c_comp->add_flag("--verify", comp.verify, "Decode in memory before writing");

  std::string decomp_input;
  auto* c_decomp = app.add_subcommand("decompress", "Recover the contents of an SQZ1 container");
  c_decomp->add_option("input", decomp_input, "Container file")->required();

  MetricsArgs met;
  auto* c_met = app.add_subcommand("metrics", "Distortion of a decoded signal against its reference");
  c_met->add_option("reference", met.reference, "Reference signal CSV")->required();
  c_met->add_option("test", met.test, "Decoded signal CSV")->required();

  CodecArgs plot;
  auto* c_plot = app.add_subcommand("plotdata", "Original, coding output, decoding output and error as CSV");
  add_codec_flags(c_plot, plot);

  RomArgs rom;
  auto* c_rom = app.add_subcommand("romfit", "Fit a firmware image into the smallest flash device");
  c_rom->add_option("image", rom.image, "Intel HEX (.hex) or raw binary image")->required();
  c_rom->add_option("--manifest", rom.manifest, "Section manifest JSON")->required();
  c_rom->add_option("--catalog", rom.catalog, "Device catalog JSON (default TC1734/TC1738/TC1767)");
  c_rom->add_option("--policy", rom.policy, "Overrides such as initvars=rle,code=lzss");
  c_rom->add_option("--stub", rom.stubs, "Stub size overrides such as lzss=900");
  c_rom->add_option("--base", rom.base, "Load address of a raw binary image")->capture_default_str();

  MemArgs mem;
  auto* c_mem = app.add_subcommand("memsim", "Simulate cache traffic to compressed main memory");
  c_mem->add_option("--image", mem.image, "Raw memory image")->required();
  c_mem->add_option("--trace", mem.trace, "Access trace CSV")->required();
  c_mem->add_option("--base", mem.base, "Image base address")->capture_default_str();
  c_mem->add_option("--line", mem.line, "Line size in bytes")->capture_default_str();
  c_mem->add_option("--sets", mem.sets, "Number of sets")->capture_default_str();
  c_mem->add_option("--ways", mem.ways, "Associativity")->capture_default_str();
  c_mem->add_option("--slot", mem.slot, "Slot size S (8 or 12)")->capture_default_str();
  c_mem->add_option("--codec", mem.codec, "rle, lzss or lzar")->capture_default_str();
  c_mem->add_flag("--sweep", mem.sweep, "Compare S = 8 against S = 12");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*c_gen) return cmd_gen(gen, g, out);
    if (*c_comp) {
      require_file(comp.input, "input");
      return cmd_compress(comp, g, out);
    }
    if (*c_decomp) {
      require_file(decomp_input, "input");
      return cmd_decompress(decomp_input, g, out);
    }
    if (*c_met) {
      require_file(met.reference, "reference");
      require_file(met.test, "test");
      return cmd_metrics(met, g, out);
    }
    if (*c_plot) {
      require_file(plot.input, "input");
      return cmd_plotdata(plot, g, out);
    }
    if (*c_rom) {
      require_file(rom.image, "image");
      require_file(rom.manifest, "--manifest");
      if (!rom.catalog.empty()) require_file(rom.catalog, "--catalog");
      return cmd_romfit(rom, g, out);
    }
    if (*c_mem) {
      require_file(mem.image, "--image");
      require_file(mem.trace, "--trace");
      return cmd_memsim(mem, g, out);
    }
  } catch (const UsageError& e) {
    err << "sqz: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "sqz: " << e.what() << "\n";
    // Generator parameter errors are argument errors.
    if (*c_gen && (e.code() == Errc::NyquistViolation || e.code() == Errc::InvalidArgument ||
                   e.code() == Errc::BadInterval || e.code() == Errc::EmptySignal)) {
      return kExitUsage;
    }
    return exit_code_for(e.code());
  }
  return kExitUsage;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace sqz::cli
