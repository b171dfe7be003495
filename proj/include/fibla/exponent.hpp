#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fibla/rational.hpp"

namespace fibla {

/// A rational exponent p >= 1, or infinity.
class Exponent {
 public:
  /// Throws ErrorCode::kDomain when p < 1.
  explicit Exponent(const Rational& p);
  static Exponent infinity() { return Exponent(); }

  /// Accepts "inf", "infinity", or a rational such as "3/2".
  static Exponent parse(std::string_view text);

  bool is_infinite() const { return !value_.has_value(); }
  /// Requires !is_infinite().
  const Rational& value() const;
  bool is_one() const { return value_ && *value_ == Rational(1); }
  bool is_integer() const { return value_ && value_->is_integer(); }

  /// q with 1/p + 1/q = 1; 1 <-> infinity.
  Exponent conjugate() const;

  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b) { return a.value_ == b.value_; }

 private:
  Exponent() = default;
  std::optional<Rational> value_;
};

}  // namespace fibla
