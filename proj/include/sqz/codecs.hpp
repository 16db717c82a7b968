#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace sqz {

enum class Algo : std::uint8_t {
  Rle = 0,
  Lzw = 1,
  Lzss = 2,
  Lzar = 3,
  Predictive = 4,
  Wavelet = 5,
  Hybrid = 6,
};

inline constexpr std::uint8_t kFlagLossy = 0x01;

bool is_lossy(Algo algo) noexcept;
std::string_view algo_name(Algo algo) noexcept;
std::optional<Algo> parse_algo(std::string_view name) noexcept;

// CRC-32: polynomial 0x04C11DB7 reflected, init and final xor 0xFFFFFFFF.
std::uint32_t crc32(std::span<const std::uint8_t> data) noexcept;

// Compressed stream plus the fields the SQZ1 container carries. Integrity is
// the CRC of the source bytes for lossless algorithms and of the payload for
// lossy ones.
struct Codestream {
  Algo algo = Algo::Rle;
  std::uint8_t flags = 0;
  std::uint64_t original_len = 0;
  std::uint32_t integrity = 0;
  std::vector<std::uint8_t> payload;

  static Codestream lossless(Algo algo, std::span<const std::uint8_t> source,
                             std::vector<std::uint8_t> payload);
  static Codestream lossy(Algo algo, std::uint64_t original_len, std::vector<std::uint8_t> payload);

  friend bool operator==(const Codestream&, const Codestream&) = default;
};

// SQZ1 container, little-endian:
//   magic "SQZ1" | version u8 = 1 | algo u8 | flags u8 | reserved u8 = 0
//   original_len u64 | integrity u32 | payload_len u64 | payload
inline constexpr std::size_t kContainerHeaderSize = 28;
inline constexpr std::uint8_t kContainerVersion = 1;

std::vector<std::uint8_t> wrap(const Codestream& c);
// Validates framing; lossy payloads are checked against their CRC here,
// lossless ones when decoded.
Codestream unwrap(std::span<const std::uint8_t> bytes);

// Byte-oriented lossless codecs. Each decode checks the algorithm id, the
// decoded length and the CRC.
Codestream rle_encode(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> rle_decode(const Codestream& c);

Codestream lzw_encode(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> lzw_decode(const Codestream& c);

Codestream lzss_encode(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> lzss_decode(const Codestream& c);

Codestream lzar_encode(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> lzar_decode(const Codestream& c);

// Dispatch over the four byte codecs.
Codestream encode_bytes(Algo algo, std::span<const std::uint8_t> data);
std::vector<std::uint8_t> decode_bytes(const Codestream& c);

// Bare payload transforms without container fields; the signal coders and
// the memory simulator nest these.
std::vector<std::uint8_t> rle_compress(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> rle_expand(std::span<const std::uint8_t> payload, std::uint64_t original_len);
std::vector<std::uint8_t> lzw_compress(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> lzw_expand(std::span<const std::uint8_t> payload, std::uint64_t original_len);
std::vector<std::uint8_t> lzss_compress(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> lzss_expand(std::span<const std::uint8_t> payload, std::uint64_t original_len);
std::vector<std::uint8_t> lzar_compress(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> lzar_expand(std::span<const std::uint8_t> payload, std::uint64_t original_len);

std::vector<std::uint8_t> compress_payload(Algo algo, std::span<const std::uint8_t> data);
std::vector<std::uint8_t> expand_payload(Algo algo, std::span<const std::uint8_t> payload,
                                         std::uint64_t original_len);

// LZSS parameters: 4096-byte ring buffer, initially zero-filled.
inline constexpr std::size_t kLzssWindow = 4096;
inline constexpr std::size_t kLzssMinMatch = 3;
inline constexpr std::size_t kLzssMaxMatch = 18;

struct LzssLiteral {
  std::uint8_t value;
  friend bool operator==(const LzssLiteral&, const LzssLiteral&) = default;
};
struct LzssMatch {
  std::uint16_t offset;  // 1..4096 bytes back
  std::uint8_t length;   // 3..18
  friend bool operator==(const LzssMatch&, const LzssMatch&) = default;
};
using LzssToken = std::variant<LzssLiteral, LzssMatch>;

// Greedy longest-match parse; ties go to the smallest offset. Offsets may
// reach into the zero-filled window before the first byte.
std::vector<LzssToken> lzss_tokenize(std::span<const std::uint8_t> data);

// LZW parameters.
inline constexpr std::uint32_t kLzwClear = 256;
inline constexpr std::uint32_t kLzwEnd = 257;
inline constexpr std::uint32_t kLzwFirstCode = 258;
inline constexpr std::uint32_t kLzwMaxCodes = 4096;

// Code sequence of an LZW payload, including CLEAR and END.
std::vector<std::uint16_t> lzw_codes(std::span<const std::uint8_t> payload);

}  // namespace sqz
