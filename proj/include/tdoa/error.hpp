#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tdoa {

enum class ErrorCode {
  SingularMatrix,
  DegenerateDeltas,
  NoRealSolution,
  DegenerateLinear,
  NoCandidates,
  InvalidInput,
  DegenerateSampling,
  InvalidConfig,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (the Monte Carlo harness, the CLI) can classify it without
// string matching.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace tdoa
