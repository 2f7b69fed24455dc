#pragma once

#include <ostream>

namespace fgap {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,  // not admissible, residual/verification over tolerance
  kExitBadInput = 2,     // parse errors, invalid requests
  kExitInfeasible = 3,
  kExitSolverError = 4,
};

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace fgap
