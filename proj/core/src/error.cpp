#include "locuslab/error.hpp"

namespace locuslab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kInvalidWord: return "invalid-word";
    case ErrorCode::kSharedPrefix: return "shared-prefix";
    case ErrorCode::kLengthMismatch: return "length-mismatch";
    case ErrorCode::kNormalization: return "normalization";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kResourceLimit: return "resource-limit";
    case ErrorCode::kUnsupportedCase: return "unsupported-case";
    case ErrorCode::kDegenerate: return "degenerate";
    case ErrorCode::kInconclusive: return "inconclusive";
    case ErrorCode::kSolveFailure: return "solve-failure";
    case ErrorCode::kMagnitude: return "magnitude";
    case ErrorCode::kTrapCheck: return "trap-check";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace locuslab
