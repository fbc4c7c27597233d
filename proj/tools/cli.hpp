#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kneser::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMalformed = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitVerifyFail = 4;

// Runs one command line (args excludes the program name). Data goes to `out`, diagnostics and run
// metadata to `err`; `in` is read when a command takes families and no file is given.
int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err);

} // namespace kneser::cli
