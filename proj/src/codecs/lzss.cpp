// LZSS over a 4096-byte ring buffer that starts out zero-filled. A group of
// up to eight tokens follows one control byte; bit k (LSB first) set means
// token k is a literal byte, clear means a two-byte match:
//   byte0 = (offset - 1) & 0xFF
//   byte1 = ((offset - 1) >> 8) << 4 | (length - 3)

#include <algorithm>
#include <array>

#include "lzss_format.hpp"
#include "sqz/codecs.hpp"
#include "sqz/error.hpp"

namespace sqz {
namespace {

constexpr std::size_t kHashBits = 15;
constexpr std::size_t kHashSize = std::size_t{1} << kHashBits;

std::size_t hash3(const std::uint8_t* p) {
  const std::uint32_t v = (std::uint32_t{p[0]} << 16) | (std::uint32_t{p[1]} << 8) | p[2];
  return (v * 2654435761u) >> (32 - kHashBits);
}

std::size_t common_length(std::span<const std::uint8_t> data, std::size_t src, std::size_t dst,
                          std::size_t limit) {
  std::size_t n = 0;
  while (n < limit && data[src + n] == data[dst + n]) ++n;
  return n;
}

class MatchFinder {
 public:
  explicit MatchFinder(std::span<const std::uint8_t> data)
      : data_(data), head_(kHashSize, -1), chain_(data.size(), -1) {}

  void insert(std::size_t pos) {
    if (pos + 2 >= data_.size()) return;
    const std::size_t h = hash3(data_.data() + pos);
    chain_[pos] = head_[h];
    head_[h] = static_cast<std::int64_t>(pos);
  }

  // Longest match at i; among equal lengths the smallest offset wins.
  LzssMatch find(std::size_t i) const {
    const std::size_t n = data_.size();
    const std::size_t max_len = std::min(kLzssMaxMatch, n - i);
    std::size_t best_len = 0;
    std::size_t best_off = 0;
    if (max_len < kLzssMinMatch) return {0, 0};

    // Earlier input, most recent first.
    for (std::int64_t j = head_[hash3(data_.data() + i)];
         j >= 0 && i - static_cast<std::size_t>(j) <= kLzssWindow; j = chain_[static_cast<std::size_t>(j)]) {
      const auto src = static_cast<std::size_t>(j);
      const std::size_t len = common_length(data_, src, i, max_len);
      if (len > best_len) {
        best_len = len;
        best_off = i - src;
        if (len == max_len) break;
      }
    }

    // The zero-filled window before the first byte: offset i + z starts z
    // virtual zeros ahead of data[0].
    if (best_len < max_len && i < kLzssWindow && data_[i] == 0) {
      std::size_t zeros = 0;
      while (zeros < max_len && data_[i + zeros] == 0) ++zeros;
      const std::size_t z_limit = kLzssWindow - i;
      for (std::size_t z = 1; z <= z_limit; ++z) {
        std::size_t len;
        if (z >= max_len) {
          len = zeros;  // whole match lies in the virtual zeros
        } else if (zeros < z) {
          len = zeros;
        } else {
          len = z;
          while (len < max_len && data_[len - z] == data_[i + len]) ++len;
        }
        if (len > best_len) {
          best_len = len;
          best_off = i + z;
          if (len == max_len) break;
        }
        if (z >= max_len) break;  // every larger offset gives the same length
      }
    }

    if (best_len < kLzssMinMatch) return {0, 0};
    return {static_cast<std::uint16_t>(best_off), static_cast<std::uint8_t>(best_len)};
  }

 private:
  std::span<const std::uint8_t> data_;
  std::vector<std::int64_t> head_;
  std::vector<std::int64_t> chain_;
};

}  // namespace

std::vector<LzssToken> lzss_tokenize(std::span<const std::uint8_t> data) {
  std::vector<LzssToken> tokens;
  MatchFinder finder(data);
  std::size_t i = 0;
  while (i < data.size()) {
    const LzssMatch m = finder.find(i);
    if (m.length >= kLzssMinMatch) {
      tokens.emplace_back(m);
      for (std::size_t k = 0; k < m.length; ++k) finder.insert(i + k);
      i += m.length;
    } else {
      tokens.emplace_back(LzssLiteral{data[i]});
      finder.insert(i);
      ++i;
    }
  }
  return tokens;
}

namespace detail {

void append_match(std::vector<std::uint8_t>& out, std::size_t offset, std::size_t length,
                  std::uint64_t original_len) {
  if (offset < 1 || offset > kLzssWindow || length < kLzssMinMatch || length > kLzssMaxMatch) {
    fail(Errc::CorruptStream, "LZSS match fields out of range");
  }
  if (out.size() + length > original_len) fail(Errc::CorruptStream, "LZSS match overruns original_len");
  for (std::size_t k = 0; k < length; ++k) {
    const std::size_t pos = out.size();
    out.push_back(pos >= offset ? out[pos - offset] : std::uint8_t{0});
  }
}

}  // namespace detail

std::vector<std::uint8_t> lzss_compress(std::span<const std::uint8_t> data) {
  const std::vector<LzssToken> tokens = lzss_tokenize(data);
  std::vector<std::uint8_t> out;
  out.reserve(data.size() + data.size() / 8 + 1);
  for (std::size_t g = 0; g < tokens.size(); g += 8) {
    const std::size_t control_at = out.size();
    out.push_back(0);
    std::uint8_t control = 0;
    for (std::size_t k = 0; k < 8 && g + k < tokens.size(); ++k) {
      if (const auto* lit = std::get_if<LzssLiteral>(&tokens[g + k])) {
        control |= static_cast<std::uint8_t>(1u << k);
        out.push_back(lit->value);
      } else {
        const auto& m = std::get<LzssMatch>(tokens[g + k]);
        const unsigned off = m.offset - 1u;
        out.push_back(static_cast<std::uint8_t>(off & 0xFF));
        out.push_back(static_cast<std::uint8_t>(((off >> 8) << 4) | (m.length - kLzssMinMatch)));
      }
    }
    out[control_at] = control;
  }
  return out;
}

std::vector<std::uint8_t> lzss_expand(std::span<const std::uint8_t> payload, std::uint64_t original_len) {
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(original_len, payload.size() * 18)));
  std::size_t p = 0;
  while (out.size() < original_len) {
    if (p >= payload.size()) fail(Errc::CorruptStream, "LZSS payload ends before original_len");
    const std::uint8_t control = payload[p++];
    unsigned k = 0;
    for (; k < 8 && out.size() < original_len; ++k) {
      if (control & (1u << k)) {
        if (p >= payload.size()) fail(Errc::CorruptStream, "truncated LZSS token group");
        out.push_back(payload[p++]);
      } else {
        if (p + 2 > payload.size()) fail(Errc::CorruptStream, "truncated LZSS token group");
        const std::size_t offset = (std::size_t{payload[p]} | (static_cast<std::size_t>(payload[p + 1] >> 4) << 8)) + 1;
        const std::size_t length = (payload[p + 1] & 0x0F) + kLzssMinMatch;
        p += 2;
        detail::append_match(out, offset, length, original_len);
      }
    }
    if (k < 8 && (control >> k) != 0) fail(Errc::CorruptStream, "LZSS control bits set past the last token");
  }
  if (p != payload.size()) fail(Errc::CorruptStream, "bytes follow the last LZSS token");
  // Every input has one greedy tokenization; any other token stream is damaged.
  const std::vector<std::uint8_t> canonical = lzss_compress(out);
  if (!std::equal(canonical.begin(), canonical.end(), payload.begin(), payload.end())) {
    fail(Errc::CorruptStream, "LZSS stream is not the canonical encoding of its output");
  }
  return out;
}

}  // namespace sqz
