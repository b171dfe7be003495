#include "fibla/error.hpp"

namespace fibla {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse-error";
    case ErrorCode::kUnknownWitness: return "unknown-witness";
    case ErrorCode::kUnknownCondition: return "unknown-id";
    case ErrorCode::kMissingExponent: return "missing-p";
    case ErrorCode::kIo: return "io-error";
    case ErrorCode::kNegativeBase: return "negative-base";
    case ErrorCode::kPrecisionExhausted: return "precision-exhausted";
    case ErrorCode::kNotStrictlyIncreasing: return "not-strictly-increasing";
    case ErrorCode::kNonPositiveStart: return "non-positive-start";
    case ErrorCode::kLambdaOutOfRange: return "lambda-out-of-range";
    case ErrorCode::kSingularDiagonal: return "singular-diagonal";
    case ErrorCode::kWindowMismatch: return "window-mismatch";
    case ErrorCode::kIndexOutOfRange: return "index-out-of-range";
    case ErrorCode::kDivergentTail: return "divergent-tail";
    case ErrorCode::kRowSeriesDivergent: return "row-series-divergent";
    case ErrorCode::kUnsupportedPair: return "unsupported-pair";
    case ErrorCode::kUnsupportedTarget: return "unsupported-target";
    case ErrorCode::kAlphaLimitUndetermined: return "alpha-limit-undetermined";
    case ErrorCode::kRequiresRealMode: return "requires-real-mode";
    case ErrorCode::kDomain: return "domain-error";
  }
  return "unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse:
    case ErrorCode::kUnknownWitness:
    case ErrorCode::kUnknownCondition:
    case ErrorCode::kMissingExponent:
    case ErrorCode::kIo:
      return true;
    default:
      return false;
  }
}

}  // namespace fibla
