#include <array>
#include <string>

#include "sqz/codecs.hpp"
#include "sqz/error.hpp"

namespace sqz {

namespace {
constexpr std::array<std::string_view, 7> kNames = {"rle",        "lzw",     "lzss",  "lzar",
                                                    "predictive", "wavelet", "hybrid"};
}

bool is_lossy(Algo algo) noexcept { return algo == Algo::Wavelet || algo == Algo::Hybrid; }

std::string_view algo_name(Algo algo) noexcept {
  const auto i = static_cast<std::size_t>(algo);
  return i < kNames.size() ? kNames[i] : "unknown";
}

std::optional<Algo> parse_algo(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<Algo>(i);
  }
  return std::nullopt;
}

std::vector<std::uint8_t> compress_payload(Algo algo, std::span<const std::uint8_t> data) {
  switch (algo) {
    case Algo::Rle: return rle_compress(data);
    case Algo::Lzw: return lzw_compress(data);
    case Algo::Lzss: return lzss_compress(data);
    case Algo::Lzar: return lzar_compress(data);
    default: break;
  }
  fail(Errc::UnsupportedAlgo, std::string(algo_name(algo)) + " is not a byte codec");
}

std::vector<std::uint8_t> expand_payload(Algo algo, std::span<const std::uint8_t> payload,
                                         std::uint64_t original_len) {
  switch (algo) {
    case Algo::Rle: return rle_expand(payload, original_len);
    case Algo::Lzw: return lzw_expand(payload, original_len);
    case Algo::Lzss: return lzss_expand(payload, original_len);
    case Algo::Lzar: return lzar_expand(payload, original_len);
    default: break;
  }
  fail(Errc::UnsupportedAlgo, std::string(algo_name(algo)) + " is not a byte codec");
}

Codestream encode_bytes(Algo algo, std::span<const std::uint8_t> data) {
  return Codestream::lossless(algo, data, compress_payload(algo, data));
}

std::vector<std::uint8_t> decode_bytes(const Codestream& c) {
  std::vector<std::uint8_t> out = expand_payload(c.algo, c.payload, c.original_len);
  if (out.size() != c.original_len) fail(Errc::CorruptStream, "decoded length differs from original_len");
  if (crc32(out) != c.integrity) fail(Errc::ChecksumMismatch, "decoded bytes fail the CRC check");
  return out;
}

namespace {
std::vector<std::uint8_t> decode_as(Algo expected, const Codestream& c) {
  if (c.algo != expected) {
    fail(Errc::UnsupportedAlgo, "stream holds " + std::string(algo_name(c.algo)) + ", expected " +
                                    std::string(algo_name(expected)));
  }
  return decode_bytes(c);
}
}  // namespace

Codestream rle_encode(std::span<const std::uint8_t> data) { return encode_bytes(Algo::Rle, data); }
std::vector<std::uint8_t> rle_decode(const Codestream& c) { return decode_as(Algo::Rle, c); }
Codestream lzw_encode(std::span<const std::uint8_t> data) { return encode_bytes(Algo::Lzw, data); }
std::vector<std::uint8_t> lzw_decode(const Codestream& c) { return decode_as(Algo::Lzw, c); }
Codestream lzss_encode(std::span<const std::uint8_t> data) { return encode_bytes(Algo::Lzss, data); }
std::vector<std::uint8_t> lzss_decode(const Codestream& c) { return decode_as(Algo::Lzss, c); }
Codestream lzar_encode(std::span<const std::uint8_t> data) { return encode_bytes(Algo::Lzar, data); }
std::vector<std::uint8_t> lzar_decode(const Codestream& c) { return decode_as(Algo::Lzar, c); }

}  // namespace sqz
