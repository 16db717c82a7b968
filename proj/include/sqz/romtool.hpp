#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sqz/codecs.hpp"

namespace sqz {

struct RomSpan {
  std::uint32_t base = 0;
  std::vector<std::uint8_t> bytes;

  std::uint64_t end() const noexcept { return std::uint64_t{base} + bytes.size(); }
  friend bool operator==(const RomSpan&, const RomSpan&) = default;
};

// Spans are sorted by base, non-overlapping, and never adjacent (adjacent
// data is merged).
struct RomImage {
  std::vector<RomSpan> spans;
  std::optional<std::uint32_t> entry_point;

  std::uint64_t total_bytes() const noexcept;
  // Bytes of [start, end) if one span covers the range entirely.
  std::optional<std::span<const std::uint8_t>> slice(std::uint32_t start, std::uint64_t end) const;

  friend bool operator==(const RomImage&, const RomImage&) = default;
};

// Intel HEX with record types 00, 01, 04 and 05. Errors name the 1-based
// line number.
RomImage parse_ihex(std::string_view text);
// 16 data bytes per record; inverse of parse_ihex.
std::string format_ihex(const RomImage& image);
RomImage image_from_binary(std::span<const std::uint8_t> bytes, std::uint32_t base);

// Sum of all record bytes, two's-complemented: the checksum byte that makes
// the record sum to zero.
std::uint8_t ihex_checksum(std::span<const std::uint8_t> record_without_checksum) noexcept;

enum class SectionKind { Code, Const, Initvars, Zerovars };

std::string_view section_kind_name(SectionKind k) noexcept;
std::optional<SectionKind> parse_section_kind(std::string_view name) noexcept;

struct SectionEntry {
  std::string name;
  SectionKind kind = SectionKind::Code;
  std::uint32_t start = 0;
  std::uint64_t end = 0;  // exclusive
  bool relocatable = true;

  std::uint64_t size() const noexcept { return end - start; }
};

// Manifest JSON, version 1:
//   {"version": 1, "sections": [{"name": "...", "kind": "code|const|initvars|zerovars",
//     "start": <int or "0x..">, "end": <exclusive>, "relocatable": true}]}
struct SectionManifest {
  std::vector<SectionEntry> entries;
};

SectionManifest parse_manifest(std::string_view json_text);
nlohmann::ordered_json to_json(const SectionManifest& m);
// Ranges non-overlapping; non-zerovars sections contained in one image span.
void validate_manifest(const SectionManifest& m, const RomImage& image);

struct DeviceSpec {
  std::string name;
  std::uint64_t flash_bytes = 0;
};

// Catalog JSON, version 1: {"version": 1, "devices": [{"name": "...", "flash_bytes": N}]}
struct DeviceCatalog {
  std::vector<DeviceSpec> devices;

  // TC1734 / TC1738 / TC1767 with 1, 1.5 and 2 MiB of flash.
  static DeviceCatalog tricore();
};

DeviceCatalog parse_catalog(std::string_view json_text);

// Kind -> algorithm; nullopt stores the section uncompressed.
struct CompressionPolicy {
  std::map<SectionKind, std::optional<Algo>> by_kind;

  // initvars/zerovars -> RLE, code/const -> LZW.
  static CompressionPolicy defaults();
  static CompressionPolicy uncompressed();
  std::optional<Algo> algo_for(SectionKind k) const;
};

// Applies "kind=algo[,kind=algo...]" overrides; algo is rle, lzw, lzss, lzar
// or none. Unknown algorithms raise PolicyUnknownAlgo.
CompressionPolicy parse_policy(std::string_view spec, CompressionPolicy base = CompressionPolicy::defaults());

// Resident decompressor size charged once per algorithm in use.
struct StubTable {
  std::map<Algo, std::uint64_t> bytes;

  // RLE 100, LZW 5120, LZSS 1024, LZAR 3072.
  static StubTable defaults();
  std::uint64_t stub_for(Algo a) const;
};

StubTable parse_stub_overrides(std::string_view spec, StubTable base = StubTable::defaults());

struct CompressedSection {
  SectionEntry entry;
  std::optional<Algo> algo;  // nullopt: stored verbatim
  std::uint64_t raw_bytes = 0;
  std::vector<std::uint8_t> stored;

  double ratio() const noexcept;
  bool expanded() const noexcept { return stored.size() > raw_bytes; }
};

struct CompressedImage {
  std::vector<CompressedSection> sections;
  // Image bytes outside every manifest section; always stored verbatim.
  std::uint64_t unlisted_bytes = 0;
};

CompressedImage compress_image(const RomImage& image, const SectionManifest& manifest,
                               const CompressionPolicy& policy);
std::vector<std::uint8_t> decompress_section(const CompressedSection& s);

struct SectionReport {
  std::string name;
  SectionKind kind = SectionKind::Code;
  std::uint64_t raw_bytes = 0;
  std::optional<Algo> algo;
  std::uint64_t compressed_bytes = 0;
  double ratio = 1.0;
  bool expanded = false;
};

struct DeviceFit {
  std::string name;
  std::uint64_t flash_bytes = 0;
  bool fits = false;
};

struct FitReport {
  std::vector<SectionReport> sections;
  std::map<Algo, std::uint64_t> stub_overheads;
  std::uint64_t unlisted_bytes = 0;
  std::uint64_t raw_total_bytes = 0;
  std::uint64_t total_bytes = 0;
  std::int64_t savings_bytes = 0;
  // RAM needed to hold the expanded sections after boot-time decompression.
  std::uint64_t expanded_ram_bytes = 0;
  std::vector<DeviceFit> devices;
  std::optional<std::string> chosen_device;
};

// Smallest device whose flash holds total_bytes; ties keep catalog order.
FitReport fit_report(const CompressedImage& image, const DeviceCatalog& catalog, const StubTable& stubs);

nlohmann::ordered_json to_json(const FitReport& r);
std::string format_table(const FitReport& r);

}  // namespace sqz
