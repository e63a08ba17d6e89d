#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spcluster::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitParseError = 1,
  kExitInvalidParameters = 2,
  kExitAllTrialsFailed = 3,
  kExitFixtureFailed = 4,
};

/// Runs the command line `args` (args[0] is the program name). Normal output
/// goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spcluster::cli
