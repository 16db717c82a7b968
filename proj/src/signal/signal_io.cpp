#include "sqz/signal_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>
#include <system_error>

#include "sqz/error.hpp"

namespace sqz {
namespace {

struct ParsedCsv {
  std::optional<double> sample_rate;
  std::optional<double> scale;
  std::vector<std::string_view> values;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    fail(Errc::ParseError, "line " + std::to_string(line) + ": not a finite number: '" + std::string(s) + "'");
  }
  return v;
}

ParsedCsv split_csv(std::string_view text) {
  ParsedCsv out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      line = trim(line.substr(1));
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) continue;
      const auto key = trim(line.substr(0, eq));
      const auto value = trim(line.substr(eq + 1));
      if (key == "sample_rate_hz") out.sample_rate = parse_double(value, line_no);
      if (key == "scale") out.scale = parse_double(value, line_no);
      continue;
    }
    out.values.push_back(line);
  }
  if (!out.sample_rate) fail(Errc::ParseError, "missing '# sample_rate_hz=' header");
  return out;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) fail(Errc::InvalidArgument, "cannot format number");
  return std::string(buf, ptr);
}

std::string format_signal_csv(const Signal& s) {
  std::string out = "# sample_rate_hz=" + format_real(s.sample_rate_hz()) + "\n";
  for (double v : s.samples()) {
    out += format_real(v);
    out += '\n';
  }
  return out;
}

std::string format_quantized_csv(const QuantizedSignal& q) {
  std::string out = "# sample_rate_hz=" + format_real(q.sample_rate_hz()) + "\n";
  out += "# scale=" + format_real(q.scale()) + "\n";
  for (std::int16_t v : q.samples()) {
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

bool csv_has_scale(std::string_view text) { return split_csv(text).scale.has_value(); }

Signal parse_signal_csv(std::string_view text) {
  const ParsedCsv csv = split_csv(text);
  const double mult = csv.scale.value_or(1.0);
  std::vector<double> samples;
  samples.reserve(csv.values.size());
  for (std::size_t i = 0; i < csv.values.size(); ++i) samples.push_back(parse_double(csv.values[i], i + 1) * mult);
  if (samples.empty()) fail(Errc::EmptySignal, "signal file holds no samples");
  return Signal(std::move(samples), *csv.sample_rate);
}

QuantizedSignal parse_quantized_csv(std::string_view text) {
  const ParsedCsv csv = split_csv(text);
  if (!csv.scale) fail(Errc::ParseError, "missing '# scale=' header for a quantized signal");
  std::vector<std::int16_t> samples;
  samples.reserve(csv.values.size());
  for (std::string_view v : csv.values) {
    int x = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size() || x < -32768 || x > 32767) {
      fail(Errc::ParseError, "not a 16-bit integer sample: '" + std::string(v) + "'");
    }
    samples.push_back(static_cast<std::int16_t>(x));
  }
  if (samples.empty()) fail(Errc::EmptySignal, "signal file holds no samples");
  return QuantizedSignal(std::move(samples), *csv.scale, *csv.sample_rate);
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string read_file_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file_atomic(const std::filesystem::path& path, std::string_view data) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::IoError, "cannot write " + tmp.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) fail(Errc::IoError, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(Errc::IoError, "cannot rename onto " + path.string() + ": " + ec.message());
}

void write_file_atomic(const std::filesystem::path& path, const std::vector<std::uint8_t>& data) {
  write_file_atomic(path, std::string_view(reinterpret_cast<const char*>(data.data()), data.size()));
}

}  // namespace sqz
