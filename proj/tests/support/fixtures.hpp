#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sqz/error.hpp"
#include "sqz/signal.hpp"
#include "sqz/signal_io.hpp"

namespace fixture {

inline std::filesystem::path source_dir() { return SQZ_SOURCE_DIR; }

// Error kind thrown by fn, or nullopt when it returns normally.
template <class Fn>
std::optional<sqz::Errc> errc_of(Fn&& fn) {
  try {
    fn();
  } catch (const sqz::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline std::vector<std::uint8_t> random_bytes(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng());
  return out;
}

// Runs of random length (1..max_run) with random values.
inline std::vector<std::uint8_t> run_bytes(std::size_t n, std::size_t max_run, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> out;
  while (out.size() < n) {
    const std::size_t run = 1 + rng() % max_run;
    const auto v = static_cast<std::uint8_t>(rng());
    for (std::size_t i = 0; i < run && out.size() < n; ++i) out.push_back(v);
  }
  return out;
}

inline std::vector<std::uint8_t> text_bytes(std::size_t n, std::uint64_t seed) {
  static const char* words[] = {"the ", "signal ", "voltage ", "period ", "of ", "a ", "sample ", "and ",
                                "compression ", "ratio ", "is ", "flash ", "memory ", "to ", "in ", "code\n"};
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> out;
  while (out.size() < n) {
    for (const char* c = words[rng() % 16]; *c && out.size() < n; ++c) out.push_back(static_cast<std::uint8_t>(*c));
  }
  return out;
}

// Mostly zero with occasional random bytes.
inline std::vector<std::uint8_t> sparse_bytes(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> out(n, 0);
  for (auto& b : out) {
    if (rng() % 29 == 0) b = static_cast<std::uint8_t>(rng());
  }
  return out;
}

inline std::vector<std::uint8_t> read_corpus(const std::string& name) {
  return sqz::read_file_bytes(source_dir() / "tests" / "corpus" / name);
}

inline std::vector<std::uint8_t> read_source(const std::string& relative) {
  return sqz::read_file_bytes(source_dir() / relative);
}

inline std::vector<std::string> corpus_names() { return {"prose.txt", "samples.csv", "firmware.bin", "manifest.json"}; }

inline std::vector<std::uint8_t> read_golden(const std::string& name) {
  return sqz::read_file_bytes(source_dir() / "tests" / "golden" / name);
}

}  // namespace fixture
