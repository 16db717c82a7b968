// Variable-width LZW: 9..12-bit codes packed MSB first. Code 256 clears the
// dictionary, 257 ends the stream. The code width for the next read is
// always bit_width(next_code + 1) clamped to [9, 12], where next_code is the
// decoder's next free dictionary slot; the encoder mirrors that schedule.

#include <algorithm>
#include <array>
#include <bit>

#include "byteio.hpp"
#include "sqz/codecs.hpp"
#include "sqz/error.hpp"

namespace sqz {
namespace {

unsigned width_for(std::uint32_t next_code) {
  return std::clamp<unsigned>(static_cast<unsigned>(std::bit_width(next_code)), 9u, 12u);
}

// (prefix code, byte) -> code, open addressing.
class EncoderTable {
 public:
  EncoderTable() { clear(); }

  void clear() { keys_.fill(0); }

  int find(std::uint32_t prefix, std::uint8_t byte) const {
    const std::uint32_t key = make_key(prefix, byte);
    for (std::uint32_t slot = hash(key);; slot = (slot + 1) & kMask) {
      if (keys_[slot] == 0) return -1;
      if (keys_[slot] == key) return codes_[slot];
    }
  }

  void insert(std::uint32_t prefix, std::uint8_t byte, std::uint16_t code) {
    const std::uint32_t key = make_key(prefix, byte);
    std::uint32_t slot = hash(key);
    while (keys_[slot] != 0) slot = (slot + 1) & kMask;
    keys_[slot] = key;
    codes_[slot] = code;
  }

 private:
  static constexpr std::uint32_t kSize = 16384;
  static constexpr std::uint32_t kMask = kSize - 1;

  static std::uint32_t make_key(std::uint32_t prefix, std::uint8_t byte) {
    return ((prefix << 8) | byte) + 1;
  }
  static std::uint32_t hash(std::uint32_t key) { return (key * 2654435761u) >> 18; }

  std::array<std::uint32_t, kSize> keys_;
  std::array<std::uint16_t, kSize> codes_{};
};

struct DecodeResult {
  std::vector<std::uint8_t> bytes;
  std::vector<std::uint16_t> codes;
};

DecodeResult run_decoder(std::span<const std::uint8_t> payload, std::uint64_t limit, bool record_codes) {
  std::array<std::uint16_t, kLzwMaxCodes> prefix{};
  std::array<std::uint8_t, kLzwMaxCodes> suffix{};
  std::array<std::uint8_t, kLzwMaxCodes> first{};
  std::array<std::uint16_t, kLzwMaxCodes> length{};
  for (std::uint32_t i = 0; i < 256; ++i) {
    suffix[i] = first[i] = static_cast<std::uint8_t>(i);
    length[i] = 1;
  }

  DecodeResult result;
  detail::BitReader in(payload);
  std::uint32_t next = kLzwFirstCode;
  std::int32_t prev = -1;
  bool started = false;
  bool ended = false;

  auto emit = [&](std::uint32_t code) {
    const std::size_t n = length[code];
    if (result.bytes.size() + n > limit) fail(Errc::CorruptStream, "LZW output overruns original_len");
    const std::size_t at = result.bytes.size();
    result.bytes.resize(at + n);
    for (std::size_t i = n; i-- > 0;) {
      result.bytes[at + i] = suffix[code];
      code = prefix[code];
    }
  };

  while (!ended) {
    const std::uint32_t code = in.get(width_for(next + 1));
    if (record_codes) result.codes.push_back(static_cast<std::uint16_t>(code));
    if (code == kLzwClear) {
      started = true;
      next = kLzwFirstCode;
      prev = -1;
      continue;
    }
    if (!started) fail(Errc::CorruptStream, "LZW stream does not begin with CLEAR");
    if (code == kLzwEnd) {
      ended = true;
      break;
    }
    if (prev < 0) {
      if (code >= 256) fail(Errc::CorruptStream, "first LZW code after CLEAR is not a literal");
      emit(code);
      prev = static_cast<std::int32_t>(code);
      continue;
    }
    if (code > next) fail(Errc::CorruptStream, "LZW code " + std::to_string(code) + " beyond dictionary");
    if (next >= kLzwMaxCodes) fail(Errc::CorruptStream, "LZW dictionary overflow without CLEAR");
    const auto p = static_cast<std::uint32_t>(prev);
    prefix[next] = static_cast<std::uint16_t>(p);
    first[next] = first[p];
    suffix[next] = code == next ? first[p] : first[code];
    length[next] = static_cast<std::uint16_t>(length[p] + 1);
    ++next;
    emit(code);
    prev = static_cast<std::int32_t>(code);
  }

  // Only zero padding may follow END.
  const std::size_t used = in.bit_position();
  if ((used + 7) / 8 != payload.size()) fail(Errc::CorruptStream, "bytes follow the LZW END code");
  if (used % 8 != 0 && in.get(static_cast<unsigned>(8 - used % 8)) != 0) {
    fail(Errc::CorruptStream, "nonzero LZW padding bits");
  }
  return result;
}

}  // namespace

std::vector<std::uint8_t> lzw_compress(std::span<const std::uint8_t> data) {
  detail::BitWriter out;
  out.put(kLzwClear, 9);
  if (data.empty()) {
    out.put(kLzwEnd, 9);
    return out.finish();
  }
  EncoderTable table;
  std::uint32_t next = kLzwFirstCode;
  unsigned width = 9;
  std::uint32_t w = data[0];
  for (std::size_t i = 1; i < data.size(); ++i) {
    const std::uint8_t c = data[i];
    const int found = table.find(w, c);
    if (found >= 0) {
      w = static_cast<std::uint32_t>(found);
      continue;
    }
    out.put(w, width);
    table.insert(w, c, static_cast<std::uint16_t>(next));
    ++next;
    if (next == kLzwMaxCodes) {
      out.put(kLzwClear, width);
      table.clear();
      next = kLzwFirstCode;
      width = 9;
    } else {
      width = width_for(next);
    }
    w = c;
  }
  out.put(w, width);
  // The decoder has one more dictionary entry than the encoder at this point.
  out.put(kLzwEnd, width_for(next + 1));
  return out.finish();
}

std::vector<std::uint8_t> lzw_expand(std::span<const std::uint8_t> payload, std::uint64_t original_len) {
  auto result = run_decoder(payload, original_len, false);
  if (result.bytes.size() != original_len) fail(Errc::CorruptStream, "LZW output shorter than original_len");
  return std::move(result.bytes);
}

std::vector<std::uint16_t> lzw_codes(std::span<const std::uint8_t> payload) {
  return run_decoder(payload, UINT64_MAX, true).codes;
}

}  // namespace sqz
