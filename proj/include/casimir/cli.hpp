#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace casimir::cli {

inline constexpr const char* tool_version = "1.0.0";

// Process exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_input_error = 1;
inline constexpr int exit_unstable = 2;
inline constexpr int exit_check_failed = 3; ///< paper-repro: a comparison missed its tolerance

/// Runs the command line `args` (args[0] is the program name). Data goes to
/// `out`, diagnostics to `err`; files named by --out/--plot are written directly.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace casimir::cli
