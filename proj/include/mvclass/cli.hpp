#pragma once

#include <iosfwd>

namespace mvclass::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitUsage = 64;

// Runs the `mvclass` command line. Reports go to `out` unless an output path
// is given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mvclass::cli
