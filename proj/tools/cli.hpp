#pragma once

#include <ostream>

namespace qnd::cli {

/// Exit codes: 0 success, 1 runtime error, 2 flag/usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv and runs the selected subcommand, writing the report to `out`
/// and diagnostics to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace qnd::cli
