#pragma once

// Inputs behind the files in tests/golden. Shared by the generator and the
// tests so both sides encode the same thing. Every input is built from
// integer arithmetic only.

#include <cstdint>
#include <string_view>
#include <vector>

#include "sqz/signal.hpp"

namespace golden {

inline constexpr std::string_view kText =
    "TOBEORNOTTOBEORTOBEORNOT#TOBEORNOTTOBEORTOBEORNOT#aaaaaaaaaaaaaaaaaaaabbbbbbbbbbbb"
    "the quick brown fox jumps over the lazy dog; the quick brown fox jumps again.\n";

inline std::vector<std::uint8_t> text_bytes() { return {kText.begin(), kText.end()}; }

// Triangle wave of period 64 with a step every third period.
inline sqz::QuantizedSignal triangle() {
  std::vector<std::int16_t> x(1024);
  for (std::size_t k = 0; k < x.size(); ++k) {
    const int phase = static_cast<int>(k % 64);
    const int tri = phase < 32 ? phase * 64 : (64 - phase) * 64;
    x[k] = static_cast<std::int16_t>(tri - 1024 + ((k / 192) % 2) * 100);
  }
  return sqz::QuantizedSignal(std::move(x), 1.0 / 2048, 3840.0);
}

inline sqz::Signal triangle_volts() { return sqz::dequantize(triangle()); }

}  // namespace golden
