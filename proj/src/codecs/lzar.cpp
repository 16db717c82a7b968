// LZAR: the LZSS token stream entropy-coded with a 32-bit range coder.
//
// Symbols 0..255 are literals and 256..271 match lengths 3..18, all in one
// adaptive order-0 model (counts start at 1, +32 per occurrence, every count
// halved once the total exceeds 2^14). A match symbol is followed by its
// offset - 1 coded uniformly over 4096 values.

#include <algorithm>
#include <array>

#include "lzss_format.hpp"
#include "sqz/codecs.hpp"
#include "sqz/error.hpp"

namespace sqz {
namespace {

constexpr std::uint32_t kSymbols = 256 + 16;
constexpr std::uint32_t kIncrement = 32;
constexpr std::uint32_t kTotalLimit = 1u << 14;
constexpr std::uint32_t kTop = 1u << 24;

class AdaptiveModel {
 public:
  AdaptiveModel() {
    freq_.fill(1);
    rebuild();
  }

  std::uint32_t total() const noexcept { return total_; }
  std::uint32_t freq(std::uint32_t s) const noexcept { return freq_[s]; }

  std::uint32_t cumulative(std::uint32_t s) const noexcept {
    std::uint32_t sum = 0;
    for (std::uint32_t i = s; i > 0; i -= i & (~i + 1)) sum += tree_[i];
    return sum;
  }

  // Symbol whose interval [cum, cum + freq) holds target.
  std::uint32_t find(std::uint32_t target) const noexcept {
    std::uint32_t pos = 0;
    for (std::uint32_t step = kTreeTop; step > 0; step >>= 1) {
      const std::uint32_t next = pos + step;
      if (next <= kSymbols && tree_[next] <= target) {
        pos = next;
        target -= tree_[next];
      }
    }
    return pos;
  }

  void update(std::uint32_t s) {
    freq_[s] += kIncrement;
    total_ += kIncrement;
    if (total_ > kTotalLimit) {
      for (auto& f : freq_) f = (f + 1) / 2;
      rebuild();
    } else {
      for (std::uint32_t i = s + 1; i <= kSymbols; i += i & (~i + 1)) tree_[i] += kIncrement;
    }
  }

 private:
  static constexpr std::uint32_t kTreeTop = 256;  // largest power of two <= kSymbols

  void rebuild() {
    tree_.fill(0);
    total_ = 0;
    for (std::uint32_t s = 0; s < kSymbols; ++s) {
      total_ += freq_[s];
      for (std::uint32_t i = s + 1; i <= kSymbols; i += i & (~i + 1)) tree_[i] += freq_[s];
    }
  }

  std::array<std::uint32_t, kSymbols> freq_{};
  std::array<std::uint32_t, kSymbols + 1> tree_{};
  std::uint32_t total_ = 0;
};

class RangeEncoder {
 public:
  void encode(std::uint32_t cum, std::uint32_t freq, std::uint32_t total) {
    const std::uint32_t r = range_ / total;
    low_ += static_cast<std::uint64_t>(r) * cum;
    range_ = r * freq;
    while (range_ < kTop) {
      range_ <<= 8;
      shift_low();
    }
  }

  std::vector<std::uint8_t> finish() {
    for (int i = 0; i < 5; ++i) shift_low();
    return std::move(out_);
  }

 private:
  void shift_low() {
    if (static_cast<std::uint32_t>(low_) < 0xFF000000u || (low_ >> 32) != 0) {
      const auto carry = static_cast<std::uint8_t>(low_ >> 32);
      std::uint8_t pending = cache_;
      do {
        out_.push_back(static_cast<std::uint8_t>(pending + carry));
        pending = 0xFF;
      } while (--cache_size_ != 0);
      cache_ = static_cast<std::uint8_t>(low_ >> 24);
    }
    ++cache_size_;
    low_ = (low_ & 0x00FFFFFFu) << 8;
  }

  std::uint64_t low_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint8_t cache_ = 0;
  std::uint64_t cache_size_ = 1;
  std::vector<std::uint8_t> out_;
};

class RangeDecoder {
 public:
  explicit RangeDecoder(std::span<const std::uint8_t> in) : in_(in) {
    if (next_byte() != 0) fail(Errc::CorruptStream, "LZAR stream must start with a zero byte");
    for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | next_byte();
  }

  std::uint32_t target(std::uint32_t total) {
    r_ = range_ / total;
    const std::uint32_t v = code_ / r_;
    if (v >= total) fail(Errc::CorruptStream, "LZAR decoder desynchronized");
    return v;
  }

  void consume(std::uint32_t cum, std::uint32_t freq) {
    code_ -= r_ * cum;
    range_ = r_ * freq;
    while (range_ < kTop) {
      code_ = (code_ << 8) | next_byte();
      range_ <<= 8;
    }
  }

  bool exhausted() const noexcept { return pos_ == in_.size(); }
  // The encoder flushes low exactly, so a well-formed stream ends with the
  // code sitting at the bottom of the final interval.
  bool at_flush_point() const noexcept { return code_ == 0; }

 private:
  std::uint8_t next_byte() {
    if (pos_ >= in_.size()) fail(Errc::CorruptStream, "LZAR payload ends early");
    return in_[pos_++];
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
  std::uint32_t code_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint32_t r_ = 1;
};

}  // namespace

std::vector<std::uint8_t> lzar_compress(std::span<const std::uint8_t> data) {
  AdaptiveModel model;
  RangeEncoder enc;
  for (const LzssToken& token : lzss_tokenize(data)) {
    std::uint32_t symbol;
    const LzssMatch* match = std::get_if<LzssMatch>(&token);
    if (match) {
      symbol = 256u + match->length - static_cast<std::uint32_t>(kLzssMinMatch);
    } else {
      symbol = std::get<LzssLiteral>(token).value;
    }
    enc.encode(model.cumulative(symbol), model.freq(symbol), model.total());
    model.update(symbol);
    if (match) enc.encode(match->offset - 1u, 1, static_cast<std::uint32_t>(kLzssWindow));
  }
  return enc.finish();
}

std::vector<std::uint8_t> lzar_expand(std::span<const std::uint8_t> payload, std::uint64_t original_len) {
  AdaptiveModel model;
  RangeDecoder dec(payload);
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(original_len, payload.size() * 64)));
  while (out.size() < original_len) {
    const std::uint32_t symbol = model.find(dec.target(model.total()));
    dec.consume(model.cumulative(symbol), model.freq(symbol));
    model.update(symbol);
    if (symbol < 256) {
      out.push_back(static_cast<std::uint8_t>(symbol));
    } else {
      const std::uint32_t offset = dec.target(static_cast<std::uint32_t>(kLzssWindow));
      dec.consume(offset, 1);
      detail::append_match(out, offset + 1, symbol - 256 + kLzssMinMatch, original_len);
    }
  }
  if (!dec.exhausted()) fail(Errc::CorruptStream, "bytes follow the end of the LZAR stream");
  if (!dec.at_flush_point()) fail(Errc::CorruptStream, "LZAR stream does not end on its flush point");
  return out;
}

}  // namespace sqz
