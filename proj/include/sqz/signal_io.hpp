#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sqz/signal.hpp"

namespace sqz {

// Signal CSV: "# sample_rate_hz=<v>" then one decimal sample per line.
// Quantized CSV adds "# scale=<v>" as the second header line and stores
// integer counts. Reals are written in shortest round-trip form.
std::string format_signal_csv(const Signal& s);
std::string format_quantized_csv(const QuantizedSignal& q);

// Accepts either layout; quantized files are dequantized.
Signal parse_signal_csv(std::string_view text);
// Requires the scale header.
QuantizedSignal parse_quantized_csv(std::string_view text);
bool csv_has_scale(std::string_view text);

std::string format_real(double v);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
std::string read_file_text(const std::filesystem::path& path);
// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view data);
void write_file_atomic(const std::filesystem::path& path, const std::vector<std::uint8_t>& data);

}  // namespace sqz
