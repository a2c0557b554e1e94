#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tdoa/error.hpp"

namespace tdoa::cli {

// Process exit codes. Stable; scripts depend on them.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,  // bad flags or InvalidConfig
  kParseError = 3,
  kSingularMatrix = 4,
  kNoRealSolution = 5,
  kSolverError = 6,  // DegenerateDeltas, DegenerateLinear, NoCandidates, InvalidInput
  kIoError = 7,
};

int exit_code_for(ErrorCode code);

// Entry point shared by the `tdoa` binary and the tests. args[0] is the
// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tdoa::cli
