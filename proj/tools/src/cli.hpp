#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eigengeo::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;    // bad flags, input files or domain errors
inline constexpr int kExitNumeric = 3;  // numerical failure inside a valid computation

// Runs the command line `args` (without the program name). Human-readable
// progress goes to `out`, diagnostics to `err`; files go under --out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eigengeo::cli
