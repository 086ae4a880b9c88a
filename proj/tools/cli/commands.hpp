#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sentarc::cli {

// Process exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_input = 2;        // unreadable / malformed input, bad flags
inline constexpr int exit_precondition = 3; // inputs valid but the analysis cannot run
inline constexpr int exit_internal = 4;     // invariant breach

/// Runs `sentarc <command> [flags]` with `args` excluding the program name.
/// Reports go to `out`, warnings and errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sentarc::cli
