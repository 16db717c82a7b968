#include "sqz/memsim.hpp"

#include <bit>
#include <cstdio>
#include <string>
#include <unordered_map>

#include "sqz/error.hpp"

namespace sqz {
namespace {

struct StoredLine {
  bool raw = false;
  std::vector<std::uint8_t> data;  // codec payload, or the line itself when raw
};

struct Way {
  bool valid = false;
  bool dirty = false;
  std::uint64_t line = 0;  // line index
  std::uint64_t stamp = 0;
  std::vector<std::uint8_t> data;
};

class Simulator {
 public:
  Simulator(const MemoryImage& image, const CacheConfig& cfg)
      : image_(image), cfg_(cfg), ways_(cfg.sets * cfg.ways) {}

  void access(const Access& a) {
    const std::uint64_t line = a.address / cfg_.line_bytes;
    const std::size_t offset = a.address % cfg_.line_bytes;
    const std::size_t set = line & (cfg_.sets - 1);
    ++stats_.accesses;
    ++clock_;

    Way* slot = nullptr;
    Way* victim = nullptr;
    for (std::size_t w = 0; w < cfg_.ways; ++w) {
      Way& way = ways_[set * cfg_.ways + w];
      if (way.valid && way.line == line) {
        slot = &way;
        break;
      }
      if (!victim || (!way.valid && victim->valid) || (way.valid == victim->valid && way.stamp < victim->stamp)) {
        victim = &way;
      }
    }
    if (slot) {
      ++stats_.hits;
    } else {
      ++stats_.misses;
      if (victim->valid && victim->dirty) write_back(*victim);
      victim->valid = true;
      victim->dirty = false;
      victim->line = line;
      victim->data = fetch(line);
      slot = victim;
    }
    slot->stamp = clock_;
    if (a.op == AccessOp::Write) {
      slot->data[offset] = a.value;
      slot->dirty = true;
    }
  }

  SimulationResult finish() {
    SimulationResult r;
    // Memory view after flushing: dirty lines override stored ones. Flush
    // traffic is not counted; only evictions during the trace are.
    const std::uint64_t base = image_.base;
    r.final_memory = image_.bytes;
    auto overlay = [&](std::uint64_t line, const std::vector<std::uint8_t>& data) {
      const std::uint64_t start = line * cfg_.line_bytes;
      for (std::size_t i = 0; i < data.size(); ++i) {
        const std::uint64_t addr = start + i;
        if (addr >= base && addr < base + r.final_memory.size()) r.final_memory[addr - base] = data[i];
      }
    };
    for (const auto& [line, stored] : memory_) overlay(line, expand(stored));
    for (const Way& w : ways_) {
      if (w.valid && w.dirty) overlay(w.line, w.data);
    }
    stats_.reduction_pct =
        stats_.bytes_uncompressed_equiv == 0
            ? 0.0
            : 100.0 * (1.0 - static_cast<double>(stats_.bytes_compressed) /
                                 static_cast<double>(stats_.bytes_uncompressed_equiv));
    r.stats = stats_;
    r.transfers = std::move(transfers_);
    return r;
  }

 private:
  std::vector<std::uint8_t> pristine(std::uint64_t line) const {
    std::vector<std::uint8_t> data(cfg_.line_bytes, 0);
    const std::uint64_t start = line * cfg_.line_bytes;
    const std::uint64_t base = image_.base;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const std::uint64_t addr = start + i;
      if (addr >= base && addr < base + image_.bytes.size()) data[i] = image_.bytes[addr - base];
    }
    return data;
  }

  StoredLine store(const std::vector<std::uint8_t>& data, std::size_t& compressed) const {
    std::vector<std::uint8_t> packed = compress_payload(cfg_.codec, data);
    compressed = packed.size();
    if (transfer_bytes(compressed, cfg_.slot_bytes, cfg_.line_bytes) >= cfg_.line_bytes) return {true, data};
    return {false, std::move(packed)};
  }

  std::vector<std::uint8_t> expand(const StoredLine& s) const {
    if (s.raw) return s.data;
    return expand_payload(cfg_.codec, s.data, cfg_.line_bytes);
  }

  void account(std::uint64_t line, const StoredLine& s, std::size_t compressed, bool writeback) {
    const std::size_t moved = s.raw ? cfg_.line_bytes : transfer_bytes(compressed, cfg_.slot_bytes, cfg_.line_bytes);
    stats_.bytes_uncompressed_equiv += cfg_.line_bytes;
    stats_.bytes_compressed += moved;
    if (s.raw) ++stats_.raw_transfers;
    transfers_.push_back({line * cfg_.line_bytes, compressed, moved, s.raw, writeback});
  }

  std::vector<std::uint8_t> fetch(std::uint64_t line) {
    auto it = memory_.find(line);
    if (it == memory_.end()) {
      std::size_t compressed = 0;
      it = memory_.emplace(line, store(pristine(line), compressed)).first;
      compressed_size_[line] = compressed;
    }
    account(line, it->second, compressed_size_[line], false);
    std::vector<std::uint8_t> data = expand(it->second);
    if (data.size() != cfg_.line_bytes) fail(Errc::CorruptStream, "stored line expanded to the wrong size");
    return data;
  }

  void write_back(const Way& w) {
    ++stats_.writebacks;
    std::size_t compressed = 0;
    StoredLine s = store(w.data, compressed);
    account(w.line, s, compressed, true);
    memory_[w.line] = std::move(s);
    compressed_size_[w.line] = compressed;
  }

  const MemoryImage& image_;
  const CacheConfig& cfg_;
  std::vector<Way> ways_;
  std::unordered_map<std::uint64_t, StoredLine> memory_;
  std::unordered_map<std::uint64_t, std::size_t> compressed_size_;
  std::vector<Transfer> transfers_;
  TrafficStats stats_;
  std::uint64_t clock_ = 0;
};

std::string hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_hex_field(std::string_view s, std::size_t line_no) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s.remove_prefix(2);
  if (s.empty() || s.size() > 16) fail(Errc::ParseError, "trace line " + std::to_string(line_no) + ": bad hex field");
  std::uint64_t v = 0;
  for (char c : s) {
    int d = -1;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    if (d < 0) fail(Errc::ParseError, "trace line " + std::to_string(line_no) + ": bad hex digit");
    v = v * 16 + static_cast<std::uint64_t>(d);
  }
  return v;
}

}  // namespace

void CacheConfig::validate() const {
  if (line_bytes < 16 || !std::has_single_bit(line_bytes)) fail(Errc::InvalidArgument, "line_bytes must be a power of two >= 16");
  if (sets == 0 || !std::has_single_bit(sets)) fail(Errc::InvalidArgument, "sets must be a power of two");
  if (ways == 0) fail(Errc::InvalidArgument, "ways must be >= 1");
  if (slot_bytes != 8 && slot_bytes != 12) fail(Errc::InvalidArgument, "slot size must be 8 or 12");
  if (line_bytes < slot_bytes) fail(Errc::InvalidArgument, "line_bytes must be >= slot size");
  if (codec != Algo::Rle && codec != Algo::Lzss && codec != Algo::Lzar) {
    fail(Errc::InvalidArgument, "line codec must be rle, lzss or lzar");
  }
}

std::size_t transfer_bytes(std::size_t compressed_bytes, std::size_t slot_bytes, std::size_t line_bytes) noexcept {
  const std::size_t slotted = (compressed_bytes + slot_bytes - 1) / slot_bytes * slot_bytes;
  return slotted >= line_bytes ? line_bytes : slotted;
}

std::vector<Access> parse_trace(std::string_view csv) {
  std::vector<Access> out;
  std::size_t line_no = 0;
  while (!csv.empty()) {
    const std::size_t nl = csv.find('\n');
    std::string_view line = csv.substr(0, nl);
    csv = nl == std::string_view::npos ? std::string_view{} : csv.substr(nl + 1);
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t c1 = line.find(',');
    if (c1 == std::string_view::npos) fail(Errc::ParseError, "trace line " + std::to_string(line_no) + ": expected op,address");
    const std::string_view op = line.substr(0, c1);
    std::string_view rest = line.substr(c1 + 1);
    const std::size_t c2 = rest.find(',');
    Access a;
    if (op == "R" || op == "r") {
      a.op = AccessOp::Read;
    } else if (op == "W" || op == "w") {
      a.op = AccessOp::Write;
    } else {
      fail(Errc::ParseError, "trace line " + std::to_string(line_no) + ": op must be R or W");
    }
    a.address = parse_hex_field(rest.substr(0, c2), line_no);
    a.value = static_cast<std::uint8_t>(out.size() & 0xFF);
    if (c2 != std::string_view::npos) {
      if (a.op != AccessOp::Write) fail(Errc::ParseError, "trace line " + std::to_string(line_no) + ": reads take no value");
      const std::uint64_t v = parse_hex_field(rest.substr(c2 + 1), line_no);
      if (v > 0xFF) fail(Errc::ParseError, "trace line " + std::to_string(line_no) + ": write value exceeds one byte");
      a.value = static_cast<std::uint8_t>(v);
    }
    out.push_back(a);
  }
  return out;
}

std::string format_trace(std::span<const Access> trace) {
  std::string out;
  char buf[64];
  for (const Access& a : trace) {
    if (a.op == AccessOp::Read) {
      std::snprintf(buf, sizeof buf, "R,%llx\n", static_cast<unsigned long long>(a.address));
    } else {
      std::snprintf(buf, sizeof buf, "W,%llx,%02x\n", static_cast<unsigned long long>(a.address), a.value);
    }
    out += buf;
  }
  return out;
}

SimulationResult run_trace(const MemoryImage& image, std::span<const Access> trace, const CacheConfig& cfg) {
  cfg.validate();
  if (trace.empty()) fail(Errc::ZeroLengthTrace, "trace has no accesses");
  const std::uint64_t lo = image.base;
  const std::uint64_t hi = lo + image.bytes.size();
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (trace[i].address < lo || trace[i].address >= hi) {
      fail(Errc::AddressOutOfRange, "access " + std::to_string(i) + " at " + hex(trace[i].address) +
                                        " outside [" + hex(lo) + ", " + hex(hi) + ")");
    }
  }
  Simulator sim(image, cfg);
  for (const Access& a : trace) sim.access(a);
  return sim.finish();
}

SlotSweep sweep_slots(const MemoryImage& image, std::span<const Access> trace, CacheConfig cfg) {
  SlotSweep out;
  cfg.slot_bytes = 8;
  out.s8 = run_trace(image, trace, cfg);
  cfg.slot_bytes = 12;
  out.s12 = run_trace(image, trace, cfg);
  out.delta_bytes = static_cast<std::int64_t>(out.s8.stats.bytes_compressed) -
                    static_cast<std::int64_t>(out.s12.stats.bytes_compressed);
  return out;
}

nlohmann::ordered_json to_json(const TrafficStats& s) {
  nlohmann::ordered_json j;
  j["accesses"] = s.accesses;
  j["hits"] = s.hits;
  j["misses"] = s.misses;
  j["writebacks"] = s.writebacks;
  j["raw_transfers"] = s.raw_transfers;
  j["bytes_uncompressed_equiv"] = s.bytes_uncompressed_equiv;
  j["bytes_compressed"] = s.bytes_compressed;
  j["reduction_pct"] = s.reduction_pct;
  return j;
}

nlohmann::ordered_json to_json(const CacheConfig& c) {
  nlohmann::ordered_json j;
  j["line_bytes"] = c.line_bytes;
  j["sets"] = c.sets;
  j["ways"] = c.ways;
  j["slot_bytes"] = c.slot_bytes;
  j["codec"] = algo_name(c.codec);
  return j;
}

}  // namespace sqz
