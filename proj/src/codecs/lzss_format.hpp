#pragma once

#include <cstdint>
#include <vector>

namespace sqz::detail {

// Copies a back-reference into `out`, reading zeros before the first byte.
// Throws CorruptStream on bad fields or when original_len would be exceeded.
void append_match(std::vector<std::uint8_t>& out, std::size_t offset, std::size_t length,
                  std::uint64_t original_len);

}  // namespace sqz::detail
