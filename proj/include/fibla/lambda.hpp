#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fibla/rational.hpp"

namespace fibla {

enum class LambdaFamily { kLinear, kGeometric, kExplicit, kCustom };

/// How an explicit list continues past its last stored value.
enum class TailRule {
  kNone,       // querying past the list is an error
  kLinear,     // keep adding the last difference
  kGeometric,  // keep multiplying by a fixed ratio > 1
};

/// A strictly increasing positive sequence tending to infinity, with the
/// convention lambda_{-1} = 0 built into the accessor.
class LambdaSeq {
 public:
  /// lambda_n = a*n + b; requires a > 0, b > 0.
  static LambdaSeq linear(const Rational& a, const Rational& b);
  /// lambda_n = c*r^n; requires r > 1, c > 0.
  static LambdaSeq geometric(const Rational& r, const Rational& c);
  /// Stored values followed by a tail rule. `ratio` is required for kGeometric.
  static LambdaSeq explicit_values(std::vector<Rational> values, TailRule tail = TailRule::kNone,
                                   std::optional<Rational> ratio = std::nullopt);
  /// Caller-supplied oracle, validated on the first `check_window` indices.
  /// `reciprocal_summable` records whether (1/lambda_n) is in l1.
  static LambdaSeq custom(std::string name, std::function<Rational(std::size_t)> oracle,
                          bool reciprocal_summable = false, std::size_t check_window = 64);

  /// "linear:a,b" | "geometric:r,c" | "file:<path>". A file holds one
  /// rational per line and may end with "tail:linear", "tail:geometric:<r>"
  /// or "tail:none" (the default).
  static LambdaSeq parse(std::string_view spec);

  /// lambda_n; index -1 yields 0.
  Rational at(long n) const;
  /// lambda_n - lambda_{n-1}.
  Rational diff(long n) const;

  /// Throws kNonPositiveStart / kNotStrictlyIncreasing if the first
  /// `n` values violate the invariants.
  void validate(std::size_t n) const;

  LambdaFamily family() const { return impl_->family; }
  const std::string& spec() const { return impl_->spec; }

  /// Family-level knowledge that (1/lambda_n) is in l1.
  bool reciprocal_summable() const;
  /// sum_{n >= from} 1/lambda_n exactly, when the family admits a closed
  /// form (geometric, explicit with geometric tail).
  std::optional<Rational> reciprocal_tail(std::size_t from) const;

 private:
  struct Impl {
    LambdaFamily family;
    std::string spec;
    Rational a;  // linear slope / geometric ratio
    Rational b;  // linear offset / geometric scale
    std::vector<Rational> values;
    TailRule tail = TailRule::kNone;
    Rational tail_ratio;
    std::function<Rational(std::size_t)> oracle;
    bool summable = false;
  };
  explicit LambdaSeq(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

}  // namespace fibla
