#include "tdoa/error.hpp"

namespace tdoa {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::DegenerateDeltas: return "DegenerateDeltas";
    case ErrorCode::NoRealSolution: return "NoRealSolution";
    case ErrorCode::DegenerateLinear: return "DegenerateLinear";
    case ErrorCode::NoCandidates: return "NoCandidates";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DegenerateSampling: return "DegenerateSampling";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace tdoa
