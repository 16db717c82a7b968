#pragma once

#include <iosfwd>

namespace sqz::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitProcessing = 3;
inline constexpr int kExitIntegrity = 4;
inline constexpr int kExitNoFit = 5;

// Runs one `sqz` invocation; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace sqz::cli
