#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coherence {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitSuiteFailure = 1, kExitInputError = 2 };

/// Runs the `coherence` command line (classify, measure, power, demo, suite)
/// with `args` excluding the program name. Output goes to `out` (or to the
/// --out file) and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coherence
