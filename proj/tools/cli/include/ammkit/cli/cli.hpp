#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ammkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

/// Parses and executes one command line (args excludes the program name).
/// Output goes to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ammkit::cli
