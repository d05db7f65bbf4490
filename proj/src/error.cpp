#include "hypsemi/error.hpp"

namespace hypsemi {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNonPositiveDeterminant: return "NonPositiveDeterminant";
    case ErrorKind::kNotHyperbolic: return "NotHyperbolic";
    case ErrorKind::kCoincidentEndpoints: return "CoincidentEndpoints";
    case ErrorKind::kInvalidArc: return "InvalidArc";
    case ErrorKind::kArcOverlap: return "ArcOverlap";
    case ErrorKind::kSharedPoint: return "SharedPoint";
    case ErrorKind::kDegenerateCrossRatio: return "DegenerateCrossRatio";
    case ErrorKind::kAxesCross: return "AxesCross";
    case ErrorKind::kSharedEndpoint: return "SharedEndpoint";
    case ErrorKind::kAxesNotDisjoint: return "AxesNotDisjoint";
    case ErrorKind::kAxesDoNotCross: return "AxesDoNotCross";
    case ErrorKind::kThresholdNotMet: return "ThresholdNotMet";
    case ErrorKind::kNoCommonAlpha: return "NoCommonAlpha";
    case ErrorKind::kPreconditionViolated: return "PreconditionViolated";
    case ErrorKind::kVerificationFailed: return "VerificationFailed";
    case ErrorKind::kCrossRatioOutOfRange: return "CrossRatioOutOfRange";
    case ErrorKind::kSearchExhausted: return "SearchExhausted";
    case ErrorKind::kBudgetExceeded: return "BudgetExceeded";
    case ErrorKind::kInvalidMatrix: return "InvalidMatrix";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace hypsemi
