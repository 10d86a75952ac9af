#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace anai::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputFailure = 1,      // validation or parse failure
  kNumericalFailure = 2,  // NonConvergence, NonFiniteState, ...
  kIoFailure = 3,
};

// Runs one command line. args[0] is the program name. Data goes to `out` (or
// the --out target), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace anai::cli
