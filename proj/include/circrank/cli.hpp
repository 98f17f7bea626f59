#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace circrank::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kCapExceeded = 3,
  kInconsistent = 4,
};

/// Runs the command line `args` (without the program name), writing JSON to `out` and
/// diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace circrank::cli
