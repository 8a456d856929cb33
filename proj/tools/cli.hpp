#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nilsolve::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kPositive = 0,      // solvable / equivalent / valid / verified
  kNegative = 1,      // unsolvable / inequivalent / counterexample
  kUsageError = 2,    // bad arguments or malformed input
  kInapplicable = 3,  // ring is not nilpotent and --oracle was not given
};

/// Runs one command line (args excludes the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilsolve::cli
