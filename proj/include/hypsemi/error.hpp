#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypsemi {

enum class ErrorKind {
  kNonPositiveDeterminant,
  kNotHyperbolic,
  kCoincidentEndpoints,
  kInvalidArc,
  kArcOverlap,
  kSharedPoint,
  kDegenerateCrossRatio,
  kAxesCross,
  kSharedEndpoint,
  kAxesNotDisjoint,
  kAxesDoNotCross,
  kThresholdNotMet,
  kNoCommonAlpha,
  kPreconditionViolated,
  kVerificationFailed,
  kCrossRatioOutOfRange,
  kSearchExhausted,
  kBudgetExceeded,
  kInvalidMatrix,
  kParseError,
  kIoError,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so that
// callers (and the CLI exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hypsemi
