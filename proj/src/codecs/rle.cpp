#include "sqz/codecs.hpp"
#include "sqz/error.hpp"

namespace sqz {

// Payload is a sequence of (count 1..255, value) pairs.
std::vector<std::uint8_t> rle_compress(std::span<const std::uint8_t> data) {
  std::vector<std::uint8_t> out;
  std::size_t i = 0;
  while (i < data.size()) {
    const std::uint8_t value = data[i];
    std::size_t run = 1;
    while (i + run < data.size() && run < 255 && data[i + run] == value) ++run;
    out.push_back(static_cast<std::uint8_t>(run));
    out.push_back(value);
    i += run;
  }
  return out;
}

std::vector<std::uint8_t> rle_expand(std::span<const std::uint8_t> payload, std::uint64_t original_len) {
  if (payload.size() % 2 != 0) fail(Errc::CorruptStream, "RLE payload has odd length");
  if (payload.size() / 2 > original_len) fail(Errc::CorruptStream, "RLE payload holds more runs than bytes");
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(original_len));
  for (std::size_t i = 0; i < payload.size(); i += 2) {
    const std::uint8_t count = payload[i];
    if (count == 0) fail(Errc::CorruptStream, "RLE run of length zero");
    if (out.size() + count > original_len) fail(Errc::CorruptStream, "RLE runs overrun original_len");
    out.insert(out.end(), count, payload[i + 1]);
  }
  if (out.size() != original_len) fail(Errc::CorruptStream, "RLE runs fall short of original_len");
  return out;
}

}  // namespace sqz
