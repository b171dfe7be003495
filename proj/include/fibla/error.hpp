#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fibla {

/// Failure categories surfaced by the library. The CLI maps input-class
/// codes to exit status 2 and domain-class codes to exit status 3.
enum class ErrorCode {
  // input errors
  kParse,
  kUnknownWitness,
  kUnknownCondition,
  kMissingExponent,
  kIo,
  // domain errors
  kNegativeBase,
  kPrecisionExhausted,
  kNotStrictlyIncreasing,
  kNonPositiveStart,
  kLambdaOutOfRange,
  kSingularDiagonal,
  kWindowMismatch,
  kIndexOutOfRange,
  kDivergentTail,
  kRowSeriesDivergent,
  kUnsupportedPair,
  kUnsupportedTarget,
  kAlphaLimitUndetermined,
  kRequiresRealMode,
  kDomain,
};

std::string_view to_string(ErrorCode code);

/// True for codes that describe malformed input rather than a violated
/// mathematical precondition.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fibla
