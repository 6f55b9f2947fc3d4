#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace concnls {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,  // self-test or domain validation flagged a problem
  kExitConfig = 2,
  kExitSolver = 3,
};

/// Runs the tool on argv-style arguments (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The quick checks behind `self-test`; returns the number of failures.
int run_self_test(std::ostream& out);

}  // namespace concnls
