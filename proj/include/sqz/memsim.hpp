#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sqz/codecs.hpp"

namespace sqz {

// Uncompressed write-back, write-allocate LRU cache in front of a main
// memory that stores every line compressed in S-byte slots.
struct CacheConfig {
  std::size_t line_bytes = 32;  // power of two >= 16
  std::size_t sets = 64;        // power of two
  std::size_t ways = 4;
  std::size_t slot_bytes = 12;  // 8 or 12
  Algo codec = Algo::Rle;       // RLE, LZSS or LZAR

  void validate() const;
};

struct MemoryImage {
  std::uint32_t base = 0;
  std::vector<std::uint8_t> bytes;
};

enum class AccessOp { Read, Write };

struct Access {
  AccessOp op = AccessOp::Read;
  std::uint64_t address = 0;
  // Byte stored by a write. Traces without an explicit value use the low
  // byte of the access's position in the trace.
  std::uint8_t value = 0;
};

// CSV lines "R,<hex address>" or "W,<hex address>[,<hex byte>]"; blank
// lines and lines starting with '#' are skipped.
std::vector<Access> parse_trace(std::string_view csv);
std::string format_trace(std::span<const Access> trace);

struct TrafficStats {
  std::uint64_t accesses = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t writebacks = 0;
  std::uint64_t raw_transfers = 0;
  std::uint64_t bytes_uncompressed_equiv = 0;
  std::uint64_t bytes_compressed = 0;
  double reduction_pct = 0.0;

  friend bool operator==(const TrafficStats&, const TrafficStats&) = default;
};

// One line moved between cache and main memory.
struct Transfer {
  std::uint64_t line_address = 0;
  std::size_t compressed_bytes = 0;  // codec output size
  std::size_t transferred_bytes = 0;
  bool raw = false;
  bool writeback = false;
};

struct SimulationResult {
  TrafficStats stats;
  // Memory contents of the image range after flushing the cache.
  std::vector<std::uint8_t> final_memory;
  std::vector<Transfer> transfers;
};

// Slot-rounded transfer size with raw fallback at or above line_bytes.
std::size_t transfer_bytes(std::size_t compressed_bytes, std::size_t slot_bytes, std::size_t line_bytes) noexcept;

SimulationResult run_trace(const MemoryImage& image, std::span<const Access> trace, const CacheConfig& cfg);

struct SlotSweep {
  SimulationResult s8;
  SimulationResult s12;
  std::int64_t delta_bytes = 0;  // s8 - s12 compressed bytes
};

SlotSweep sweep_slots(const MemoryImage& image, std::span<const Access> trace, CacheConfig cfg);

nlohmann::ordered_json to_json(const TrafficStats& s);
nlohmann::ordered_json to_json(const CacheConfig& c);

}  // namespace sqz
