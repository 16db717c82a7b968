#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "sqz/error.hpp"

namespace sqz::detail {

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void varint(std::uint32_t v) {
    while (v >= 0x80) {
      out_.push_back(static_cast<std::uint8_t>(v | 0x80));
      v >>= 7;
    }
    out_.push_back(static_cast<std::uint8_t>(v));
  }

  std::size_t size() const noexcept { return out_.size(); }
  std::vector<std::uint8_t>& buffer() noexcept { return out_; }
  std::vector<std::uint8_t> take() noexcept { return std::move(out_); }

 private:
  void put(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> out_;
};

// Reads little-endian fields; running past the end raises `short_code`.
class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> in, Errc short_code = Errc::CorruptStream)
      : in_(in), short_code_(short_code) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::span<const std::uint8_t> bytes(std::size_t n) {
    need(n);
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint32_t varint() {
    std::uint32_t v = 0;
    for (int shift = 0; shift < 35; shift += 7) {
      const std::uint8_t b = u8();
      if (shift == 28 && (b & 0xF0) != 0) fail(Errc::CorruptStream, "varint overflows 32 bits");
      v |= static_cast<std::uint32_t>(b & 0x7F) << shift;
      if ((b & 0x80) == 0) return v;
    }
    fail(Errc::CorruptStream, "varint too long");
  }

  std::size_t position() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return in_.size() - pos_; }
  std::span<const std::uint8_t> rest() const noexcept { return in_.subspan(pos_); }

 private:
  void need(std::size_t n) {
    if (in_.size() - pos_ < n) {
      fail(short_code_, "stream ends " + std::to_string(n - (in_.size() - pos_)) + " byte(s) early");
    }
  }
  std::uint64_t get(int n) {
    need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(in_[pos_ + i]) << (8 * i);
    pos_ += static_cast<std::size_t>(n);
    return v;
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
  Errc short_code_;
};

// Most-significant-bit-first packing.
class BitWriter {
 public:
  void put(std::uint32_t value, unsigned width) {
    for (unsigned i = width; i-- > 0;) {
      acc_ = static_cast<std::uint8_t>((acc_ << 1) | ((value >> i) & 1u));
      if (++fill_ == 8) {
        out_.push_back(acc_);
        acc_ = 0;
        fill_ = 0;
      }
    }
  }
  std::vector<std::uint8_t> finish() {
    if (fill_ > 0) out_.push_back(static_cast<std::uint8_t>(acc_ << (8 - fill_)));
    acc_ = 0;
    fill_ = 0;
    return std::move(out_);
  }

 private:
  std::vector<std::uint8_t> out_;
  std::uint8_t acc_ = 0;
  unsigned fill_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> in) : in_(in) {}

  bool can_read(unsigned width) const noexcept { return bit_pos_ + width <= in_.size() * 8; }
  std::uint32_t get(unsigned width) {
    if (!can_read(width)) fail(Errc::CorruptStream, "bit stream exhausted");
    std::uint32_t v = 0;
    for (unsigned i = 0; i < width; ++i, ++bit_pos_) {
      const unsigned bit = (in_[bit_pos_ >> 3] >> (7 - (bit_pos_ & 7))) & 1u;
      v = (v << 1) | bit;
    }
    return v;
  }
  std::size_t bit_position() const noexcept { return bit_pos_; }
  std::size_t total_bits() const noexcept { return in_.size() * 8; }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t bit_pos_ = 0;
};

}  // namespace sqz::detail
