#include "sqz/romtool.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "sqz/error.hpp"
#include "sqz/metrics.hpp"

namespace sqz {
namespace {

using Json = nlohmann::json;

std::uint64_t read_address(const Json& v, const std::string& what) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::size_t used = 0;
    std::uint64_t out = 0;
    try {
      out = std::stoull(s, &used, 0);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == s.size() && !s.empty()) return out;
  }
  fail(Errc::InvalidManifest, what + " must be a non-negative integer or numeric string");
}

Json parse_json(std::string_view text, Errc code) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail(code, std::string("malformed JSON: ") + e.what());
  }
}

void check_version(const Json& j, Errc code) {
  if (!j.is_object() || !j.contains("version") || j["version"] != 1) fail(code, "expected an object with \"version\": 1");
}

std::string hex32(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%08llX", static_cast<unsigned long long>(v));
  return buf;
}

std::string algo_label(const std::optional<Algo>& a) { return a ? std::string(algo_name(*a)) : "none"; }

std::optional<std::optional<Algo>> parse_rom_algo(std::string_view name) {
  if (name == "none") return std::optional<Algo>{};
  const auto a = parse_algo(name);
  if (a && (*a == Algo::Rle || *a == Algo::Lzw || *a == Algo::Lzss || *a == Algo::Lzar)) return a;
  return std::nullopt;
}

std::vector<std::pair<std::string, std::string>> split_pairs(std::string_view spec, Errc code) {
  std::vector<std::pair<std::string, std::string>> out;
  while (!spec.empty()) {
    const std::size_t comma = spec.find(',');
    const std::string_view item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) fail(code, "expected key=value, got '" + std::string(item) + "'");
    out.emplace_back(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
  }
  return out;
}

}  // namespace

std::string_view section_kind_name(SectionKind k) noexcept {
  switch (k) {
    case SectionKind::Code: return "code";
    case SectionKind::Const: return "const";
    case SectionKind::Initvars: return "initvars";
    case SectionKind::Zerovars: return "zerovars";
  }
  return "?";
}

std::optional<SectionKind> parse_section_kind(std::string_view name) noexcept {
  for (SectionKind k : {SectionKind::Code, SectionKind::Const, SectionKind::Initvars, SectionKind::Zerovars}) {
    if (section_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

SectionManifest parse_manifest(std::string_view json_text) {
  const Json j = parse_json(json_text, Errc::InvalidManifest);
  check_version(j, Errc::InvalidManifest);
  if (!j.contains("sections") || !j["sections"].is_array()) fail(Errc::InvalidManifest, "missing sections array");
  SectionManifest m;
  for (const Json& e : j["sections"]) {
    if (!e.is_object() || !e.contains("name") || !e["name"].is_string() || !e.contains("kind") ||
        !e["kind"].is_string() || !e.contains("start") || !e.contains("end")) {
      fail(Errc::InvalidManifest, "each section needs name, kind, start and end");
    }
    SectionEntry s;
    s.name = e["name"].get<std::string>();
    const auto kind = parse_section_kind(e["kind"].get<std::string>());
    if (!kind) fail(Errc::InvalidManifest, "section '" + s.name + "' has unknown kind");
    s.kind = *kind;
    const std::uint64_t start = read_address(e["start"], s.name + ".start");
    s.end = read_address(e["end"], s.name + ".end");
    if (start >= s.end || s.end > (std::uint64_t{1} << 32)) {
      fail(Errc::InvalidManifest, "section '" + s.name + "' has an empty or out-of-range address range");
    }
    s.start = static_cast<std::uint32_t>(start);
    if (e.contains("relocatable")) {
      if (!e["relocatable"].is_boolean()) fail(Errc::InvalidManifest, s.name + ".relocatable must be boolean");
      s.relocatable = e["relocatable"].get<bool>();
    }
    m.entries.push_back(std::move(s));
  }
  std::vector<const SectionEntry*> sorted;
  for (const auto& e : m.entries) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->start < b->start; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->start < sorted[i - 1]->end) {
      fail(Errc::InvalidManifest, "sections '" + sorted[i - 1]->name + "' and '" + sorted[i]->name + "' overlap");
    }
  }
  return m;
}

nlohmann::ordered_json to_json(const SectionManifest& m) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["sections"] = nlohmann::ordered_json::array();
  for (const auto& e : m.entries) {
    nlohmann::ordered_json s;
    s["name"] = e.name;
    s["kind"] = section_kind_name(e.kind);
    s["start"] = hex32(e.start);
    s["end"] = hex32(e.end);
    s["relocatable"] = e.relocatable;
    j["sections"].push_back(std::move(s));
  }
  return j;
}

void validate_manifest(const SectionManifest& m, const RomImage& image) {
  for (const auto& e : m.entries) {
    if (e.kind == SectionKind::Zerovars) continue;
    if (!image.slice(e.start, e.end)) {
      fail(Errc::InvalidManifest, "section '" + e.name + "' [" + hex32(e.start) + ", " + hex32(e.end) +
                                      ") is not covered by image data");
    }
  }
}

DeviceCatalog DeviceCatalog::tricore() {
  return {{{"TC1734", 1048576}, {"TC1738", 1572864}, {"TC1767", 2097152}}};
}

DeviceCatalog parse_catalog(std::string_view json_text) {
  const Json j = parse_json(json_text, Errc::InvalidManifest);
  check_version(j, Errc::InvalidManifest);
  if (!j.contains("devices") || !j["devices"].is_array() || j["devices"].empty()) {
    fail(Errc::InvalidManifest, "catalog needs a non-empty devices array");
  }
  DeviceCatalog c;
  std::set<std::string> names;
  for (const Json& d : j["devices"]) {
    if (!d.is_object() || !d.contains("name") || !d["name"].is_string() || !d.contains("flash_bytes") ||
        !d["flash_bytes"].is_number_unsigned() || d["flash_bytes"].get<std::uint64_t>() == 0) {
      fail(Errc::InvalidManifest, "each device needs a name and positive flash_bytes");
    }
    DeviceSpec s{d["name"].get<std::string>(), d["flash_bytes"].get<std::uint64_t>()};
    if (!names.insert(s.name).second) fail(Errc::InvalidManifest, "duplicate device '" + s.name + "'");
    c.devices.push_back(std::move(s));
  }
  return c;
}

CompressionPolicy CompressionPolicy::defaults() {
  return {{{SectionKind::Code, Algo::Lzw},
           {SectionKind::Const, Algo::Lzw},
           {SectionKind::Initvars, Algo::Rle},
           {SectionKind::Zerovars, Algo::Rle}}};
}

CompressionPolicy CompressionPolicy::uncompressed() {
  return {{{SectionKind::Code, std::nullopt},
           {SectionKind::Const, std::nullopt},
           {SectionKind::Initvars, std::nullopt},
           {SectionKind::Zerovars, std::nullopt}}};
}

std::optional<Algo> CompressionPolicy::algo_for(SectionKind k) const {
  const auto it = by_kind.find(k);
  return it == by_kind.end() ? std::nullopt : it->second;
}

CompressionPolicy parse_policy(std::string_view spec, CompressionPolicy base) {
  for (const auto& [kind_name, algo] : split_pairs(spec, Errc::InvalidArgument)) {
    const auto kind = parse_section_kind(kind_name);
    if (!kind) fail(Errc::InvalidArgument, "unknown section kind '" + kind_name + "'");
    const auto a = parse_rom_algo(algo);
    if (!a) fail(Errc::PolicyUnknownAlgo, "'" + algo + "' (expected rle, lzw, lzss, lzar or none)");
    base.by_kind[*kind] = *a;
  }
  return base;
}

StubTable StubTable::defaults() {
  return {{{Algo::Rle, 100}, {Algo::Lzw, 5120}, {Algo::Lzss, 1024}, {Algo::Lzar, 3072}}};
}

std::uint64_t StubTable::stub_for(Algo a) const {
  const auto it = bytes.find(a);
  if (it == bytes.end()) fail(Errc::PolicyUnknownAlgo, "no stub size for " + std::string(algo_name(a)));
  return it->second;
}

StubTable parse_stub_overrides(std::string_view spec, StubTable base) {
  for (const auto& [algo, size] : split_pairs(spec, Errc::InvalidArgument)) {
    const auto a = parse_rom_algo(algo);
    if (!a || !*a) fail(Errc::PolicyUnknownAlgo, "'" + algo + "'");
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(size, &used, 10);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != size.size()) fail(Errc::InvalidArgument, "stub size '" + size + "' is not a count");
    base.bytes[**a] = v;
  }
  return base;
}

double CompressedSection::ratio() const noexcept {
  if (stored.empty()) return raw_bytes == 0 ? 1.0 : static_cast<double>(raw_bytes);
  return static_cast<double>(raw_bytes) / static_cast<double>(stored.size());
}

CompressedImage compress_image(const RomImage& image, const SectionManifest& manifest,
                               const CompressionPolicy& policy) {
  validate_manifest(manifest, image);
  CompressedImage out;
  std::uint64_t covered = 0;
  for (const auto& e : manifest.entries) {
    CompressedSection cs;
    cs.entry = e;
    cs.raw_bytes = e.size();
    cs.algo = policy.algo_for(e.kind);
    if (e.kind == SectionKind::Code && !e.relocatable) cs.algo = std::nullopt;

    std::vector<std::uint8_t> source;
    if (e.kind == SectionKind::Zerovars) {
      source.assign(e.size(), 0);
    } else {
      const auto bytes = *image.slice(e.start, e.end);
      source.assign(bytes.begin(), bytes.end());
    }
    // Image bytes inside a zerovars range belong to the section, not to the unlisted remainder.
    for (const auto& span : image.spans) {
      const std::uint64_t lo = std::max<std::uint64_t>(span.base, e.start);
      const std::uint64_t hi = std::min<std::uint64_t>(span.end(), e.end);
      if (lo < hi) covered += hi - lo;
    }
    cs.stored = cs.algo ? compress_payload(*cs.algo, source) : std::move(source);
    out.sections.push_back(std::move(cs));
  }
  out.unlisted_bytes = image.total_bytes() - covered;
  return out;
}

std::vector<std::uint8_t> decompress_section(const CompressedSection& s) {
  if (!s.algo) return s.stored;
  return expand_payload(*s.algo, s.stored, s.raw_bytes);
}

FitReport fit_report(const CompressedImage& image, const DeviceCatalog& catalog, const StubTable& stubs) {
  FitReport r;
  r.unlisted_bytes = image.unlisted_bytes;
  r.raw_total_bytes = image.unlisted_bytes;
  r.total_bytes = image.unlisted_bytes;
  for (const auto& s : image.sections) {
    SectionReport sr;
    sr.name = s.entry.name;
    sr.kind = s.entry.kind;
    sr.raw_bytes = s.raw_bytes;
    sr.algo = s.algo;
    sr.compressed_bytes = s.stored.size();
    sr.ratio = s.ratio();
    sr.expanded = s.expanded();
    r.raw_total_bytes += s.raw_bytes;
    r.total_bytes += s.stored.size();
    if (s.algo) {
      r.expanded_ram_bytes += s.raw_bytes;
      r.stub_overheads.emplace(*s.algo, stubs.stub_for(*s.algo));
    }
    r.sections.push_back(std::move(sr));
  }
  for (const auto& [algo, bytes] : r.stub_overheads) r.total_bytes += bytes;
  r.savings_bytes = static_cast<std::int64_t>(r.raw_total_bytes) - static_cast<std::int64_t>(r.total_bytes);

  const DeviceSpec* best = nullptr;
  for (const auto& d : catalog.devices) {
    const bool fits = d.flash_bytes >= r.total_bytes;
    r.devices.push_back({d.name, d.flash_bytes, fits});
    if (fits && (!best || d.flash_bytes < best->flash_bytes)) best = &d;
  }
  if (best) r.chosen_device = best->name;
  return r;
}

nlohmann::ordered_json to_json(const FitReport& r) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["sections"] = nlohmann::ordered_json::array();
  for (const auto& s : r.sections) {
    nlohmann::ordered_json e;
    e["name"] = s.name;
    e["kind"] = section_kind_name(s.kind);
    e["raw_bytes"] = s.raw_bytes;
    e["algo"] = algo_label(s.algo);
    e["compressed_bytes"] = s.compressed_bytes;
    e["ratio"] = s.ratio;
    e["expanded"] = s.expanded;
    j["sections"].push_back(std::move(e));
  }
  j["unlisted_bytes"] = r.unlisted_bytes;
  nlohmann::ordered_json stubs = nlohmann::ordered_json::object();
  for (const auto& [algo, bytes] : r.stub_overheads) stubs[std::string(algo_name(algo))] = bytes;
  j["stub_overheads"] = std::move(stubs);
  j["raw_total_bytes"] = r.raw_total_bytes;
  j["total_bytes"] = r.total_bytes;
  j["savings_bytes"] = r.savings_bytes;
  j["expanded_ram_bytes"] = r.expanded_ram_bytes;
  j["devices"] = nlohmann::ordered_json::array();
  for (const auto& d : r.devices) {
    j["devices"].push_back({{"name", d.name}, {"flash_bytes", d.flash_bytes}, {"fits", d.fits}});
  }
  j["chosen_device"] = r.chosen_device ? nlohmann::ordered_json(*r.chosen_device) : nlohmann::ordered_json(nullptr);
  return j;
}

std::string format_table(const FitReport& r) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-20s %-9s %12s %-5s %12s %9s\n", "section", "kind", "raw", "algo", "stored",
                "ratio");
  out += buf;
  for (const auto& s : r.sections) {
    std::snprintf(buf, sizeof buf, "%-20s %-9s %12llu %-5s %12llu %9s%s\n", s.name.c_str(),
                  std::string(section_kind_name(s.kind)).c_str(), static_cast<unsigned long long>(s.raw_bytes),
                  algo_label(s.algo).c_str(), static_cast<unsigned long long>(s.compressed_bytes),
                  format_ratio(s.ratio).c_str(), s.expanded ? "  EXPANDED" : "");
    out += buf;
  }
  auto line = [&](const char* label, unsigned long long v) {
    std::snprintf(buf, sizeof buf, "%-30s %12llu\n", label, v);
    out += buf;
  };
  line("unlisted bytes", r.unlisted_bytes);
  for (const auto& [algo, bytes] : r.stub_overheads) {
    std::snprintf(buf, sizeof buf, "stub %-25s %12llu\n", std::string(algo_name(algo)).c_str(),
                  static_cast<unsigned long long>(bytes));
    out += buf;
  }
  line("raw total", r.raw_total_bytes);
  line("total", r.total_bytes);
  std::snprintf(buf, sizeof buf, "%-30s %12lld\n", "savings", static_cast<long long>(r.savings_bytes));
  out += buf;
  line("expanded RAM", r.expanded_ram_bytes);
  for (const auto& d : r.devices) {
    std::snprintf(buf, sizeof buf, "device %-23s %12llu %s\n", d.name.c_str(),
                  static_cast<unsigned long long>(d.flash_bytes), d.fits ? "fits" : "too small");
    out += buf;
  }
  out += "chosen device: " + (r.chosen_device ? *r.chosen_device : std::string("none")) + "\n";
  return out;
}

}  // namespace sqz
