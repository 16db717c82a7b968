#include <zlib.h>

#include <algorithm>
#include <limits>

#include "sqz/codecs.hpp"

namespace sqz {

// zlib's crc32 is exactly the reflected 0x04C11DB7 / 0xFFFFFFFF variant.
std::uint32_t crc32(std::span<const std::uint8_t> data) noexcept {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  const std::uint8_t* p = data.data();
  std::size_t left = data.size();
  while (left > 0) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(left, std::numeric_limits<uInt>::max()));
    crc = ::crc32(crc, p, chunk);
    p += chunk;
    left -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace sqz
