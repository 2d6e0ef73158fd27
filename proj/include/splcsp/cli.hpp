#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace splcsp {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,       // bad arguments or unreadable/malformed input
  kExitInfeasible = 2,  // minimum cost is infinite
  kExitCheckFailed = 3, // the solver disagreed with the oracle
};

// Runs the command line `args` (args[0] is the program name). Data goes to
// `out` or the file named by --out/--csv, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace splcsp
