#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace evendct::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name). Results go to
/// `out`, diagnostics to `err`; the return value is the process exit code.
///
/// Subcommands: gen, eval, count, formula, table2, fig5, verify.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evendct::cli
