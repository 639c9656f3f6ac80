#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace locuslab {

enum class ErrorCode {
  kDomain,          // parameter or argument outside the admissible domain
  kInvalidWord,     // malformed or empty symbolic word
  kSharedPrefix,    // words of a translation pair share their first letter
  kLengthMismatch,  // paired words of unequal length
  kNormalization,   // series without constant term 1, or bad coefficient
  kPrecondition,    // any other violated precondition
  kResourceLimit,   // requested work exceeds a configured budget
  kUnsupportedCase, // analytic route not available for these parameters
  kDegenerate,      // degenerate geometry (e.g. collinear hull input)
  kInconclusive,    // numerical evidence insufficient at the configured depth
  kSolveFailure,    // no bracket / no root where one was required
  kMagnitude,       // truncation order too small for the requested vector
  kTrapCheck,       // a trap condition failed
  kParse,           // text format could not be parsed
  kIo,              // file could not be read or written
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace locuslab
