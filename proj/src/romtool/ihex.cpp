#include <algorithm>
#include <cstdio>
#include <string>

#include "sqz/error.hpp"
#include "sqz/romtool.hpp"

namespace sqz {
namespace {

std::string at_line(std::size_t line) { return "line " + std::to_string(line); }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

struct Chunk {
  std::uint64_t address;
  std::vector<std::uint8_t> bytes;
  std::size_t line;
};

void append_record(std::string& out, std::uint8_t type, std::uint16_t address,
                   std::span<const std::uint8_t> data) {
  std::vector<std::uint8_t> rec;
  rec.push_back(static_cast<std::uint8_t>(data.size()));
  rec.push_back(static_cast<std::uint8_t>(address >> 8));
  rec.push_back(static_cast<std::uint8_t>(address & 0xFF));
  rec.push_back(type);
  rec.insert(rec.end(), data.begin(), data.end());
  rec.push_back(ihex_checksum(rec));
  out.push_back(':');
  char buf[3];
  for (std::uint8_t b : rec) {
    std::snprintf(buf, sizeof buf, "%02X", b);
    out += buf;
  }
  out.push_back('\n');
}

}  // namespace

std::uint64_t RomImage::total_bytes() const noexcept {
  std::uint64_t n = 0;
  for (const auto& s : spans) n += s.bytes.size();
  return n;
}

std::optional<std::span<const std::uint8_t>> RomImage::slice(std::uint32_t start, std::uint64_t end) const {
  for (const auto& s : spans) {
    if (start >= s.base && end <= s.end() && start <= end) {
      return std::span<const std::uint8_t>(s.bytes).subspan(start - s.base, end - start);
    }
  }
  return std::nullopt;
}

std::uint8_t ihex_checksum(std::span<const std::uint8_t> record_without_checksum) noexcept {
  unsigned sum = 0;
  for (std::uint8_t b : record_without_checksum) sum += b;
  return static_cast<std::uint8_t>((0x100 - (sum & 0xFF)) & 0xFF);
}

RomImage parse_ihex(std::string_view text) {
  std::vector<Chunk> chunks;
  RomImage image;
  std::uint64_t upper = 0;
  bool eof = false;
  std::size_t line_no = 0;

  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.remove_suffix(1);
    }
    if (line.empty()) continue;
    if (eof) fail(Errc::BadRecord, at_line(line_no) + ": record after EOF");
    if (line.front() != ':') fail(Errc::BadRecord, at_line(line_no) + ": record does not start with ':'");
    line.remove_prefix(1);
    if (line.size() % 2 != 0) fail(Errc::BadRecord, at_line(line_no) + ": odd number of hex digits");

    std::vector<std::uint8_t> rec(line.size() / 2);
    for (std::size_t i = 0; i < rec.size(); ++i) {
      const int hi = hex_value(line[2 * i]);
      const int lo = hex_value(line[2 * i + 1]);
      if (hi < 0 || lo < 0) fail(Errc::BadHexDigit, at_line(line_no));
      rec[i] = static_cast<std::uint8_t>(hi * 16 + lo);
    }
    if (rec.size() < 5 || rec.size() != std::size_t{rec[0]} + 5) {
      fail(Errc::BadRecord, at_line(line_no) + ": byte count does not match record length");
    }
    if (ihex_checksum(std::span(rec).first(rec.size() - 1)) != rec.back()) {
      fail(Errc::BadChecksum, at_line(line_no));
    }

    const std::size_t len = rec[0];
    const std::uint32_t offset = (std::uint32_t{rec[1]} << 8) | rec[2];
    const std::uint8_t type = rec[3];
    const auto data = std::span(rec).subspan(4, len);
    switch (type) {
      case 0x00: {
        const std::uint64_t address = upper + offset;
        if (address + len > (std::uint64_t{1} << 32)) {
          fail(Errc::BadRecord, at_line(line_no) + ": data runs past the 32-bit address space");
        }
        if (len > 0) chunks.push_back({address, {data.begin(), data.end()}, line_no});
        break;
      }
      case 0x01:
        if (len != 0) fail(Errc::BadRecord, at_line(line_no) + ": EOF record carries data");
        eof = true;
        break;
      case 0x04:
        if (len != 2) fail(Errc::BadRecord, at_line(line_no) + ": extended linear address needs 2 bytes");
        upper = ((std::uint64_t{data[0]} << 8) | data[1]) << 16;
        break;
      case 0x05:
        if (len != 4) fail(Errc::BadRecord, at_line(line_no) + ": start linear address needs 4 bytes");
        image.entry_point = (std::uint32_t{data[0]} << 24) | (std::uint32_t{data[1]} << 16) |
                            (std::uint32_t{data[2]} << 8) | data[3];
        break;
      default:
        fail(Errc::UnsupportedRecordType, at_line(line_no) + ": type " + std::to_string(type));
    }
  }
  if (!eof) fail(Errc::MissingEof, "no EOF record");

  std::stable_sort(chunks.begin(), chunks.end(),
                   [](const Chunk& a, const Chunk& b) { return a.address < b.address; });
  for (const Chunk& c : chunks) {
    if (!image.spans.empty()) {
      RomSpan& last = image.spans.back();
      if (c.address < last.end()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "0x%08llX", static_cast<unsigned long long>(c.address));
        fail(Errc::OverlappingData, std::string(buf) + " (" + at_line(c.line) + ")");
      }
      if (c.address == last.end()) {
        last.bytes.insert(last.bytes.end(), c.bytes.begin(), c.bytes.end());
        continue;
      }
    }
    image.spans.push_back({static_cast<std::uint32_t>(c.address), c.bytes});
  }
  return image;
}

std::string format_ihex(const RomImage& image) {
  std::string out;
  std::uint32_t upper = 0;
  for (const RomSpan& s : image.spans) {
    std::uint64_t pos = 0;
    while (pos < s.bytes.size()) {
      const std::uint64_t address = s.base + pos;
      const auto hi = static_cast<std::uint32_t>(address >> 16);
      if (hi != upper) {
        const std::uint8_t ext[2] = {static_cast<std::uint8_t>(hi >> 8), static_cast<std::uint8_t>(hi & 0xFF)};
        append_record(out, 0x04, 0, ext);
        upper = hi;
      }
      const std::uint64_t to_boundary = 0x10000 - (address & 0xFFFF);
      const std::uint64_t n = std::min<std::uint64_t>({16, s.bytes.size() - pos, to_boundary});
      append_record(out, 0x00, static_cast<std::uint16_t>(address & 0xFFFF),
                    std::span(s.bytes).subspan(pos, n));
      pos += n;
    }
  }
  if (image.entry_point) {
    const std::uint32_t e = *image.entry_point;
    const std::uint8_t d[4] = {static_cast<std::uint8_t>(e >> 24), static_cast<std::uint8_t>(e >> 16),
                               static_cast<std::uint8_t>(e >> 8), static_cast<std::uint8_t>(e)};
    append_record(out, 0x05, 0, d);
  }
  append_record(out, 0x01, 0, {});
  return out;
}

RomImage image_from_binary(std::span<const std::uint8_t> bytes, std::uint32_t base) {
  if (std::uint64_t{base} + bytes.size() > (std::uint64_t{1} << 32)) {
    fail(Errc::AddressOutOfRange, "binary image runs past the 32-bit address space");
  }
  RomImage image;
  if (!bytes.empty()) image.spans.push_back({base, {bytes.begin(), bytes.end()}});
  return image;
}

}  // namespace sqz
