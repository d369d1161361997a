#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace npspace::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParseError = 2,
  kInvariantViolation = 3,
  kUnknownVerdict = 4,
};

/// Runs the command line `args` (without the program name) and returns the
/// process exit code. Regular output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace npspace::cli
