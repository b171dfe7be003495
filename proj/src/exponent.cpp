#include "fibla/exponent.hpp"

#include "fibla/error.hpp"

namespace fibla {

Exponent::Exponent(const Rational& p) : value_(p) {
  if (p < Rational(1)) throw Error(ErrorCode::kDomain, "exponent below 1: " + p.to_string());
}

Exponent Exponent::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "oo") return infinity();
  return Exponent(Rational::parse(text));
}

const Rational& Exponent::value() const {
  if (!value_) throw Error(ErrorCode::kDomain, "infinite exponent has no rational value");
  return *value_;
}

Exponent Exponent::conjugate() const {
  if (!value_) return Exponent(Rational(1));
  if (*value_ == Rational(1)) return infinity();
  return Exponent(*value_ / (*value_ - Rational(1)));
}

std::string Exponent::to_string() const { return value_ ? value_->to_string() : "inf"; }

}  // namespace fibla
