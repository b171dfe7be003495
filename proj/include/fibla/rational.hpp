#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace fibla {

using BigInt = mpz_class;

/// Exact rational number held in canonical form: positive denominator and
/// gcd(|num|, den) = 1 after every operation, so equality is structural.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}                      // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(static_cast<long>(v)) {}    // NOLINT(google-explicit-constructor)
  Rational(unsigned long v) : q_(v) {}             // NOLINT(google-explicit-constructor)
  Rational(unsigned int v) : q_(static_cast<unsigned long>(v)) {}  // NOLINT
  explicit Rational(const BigInt& v) : q_(v) {}
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "num/den" or an integer such as "-7".
  static Rational parse(std::string_view text);

  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }
  const mpq_class& get() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational abs() const;
  Rational inverse() const;
  Rational pow(unsigned long e) const;

  /// Nearest double; saturates to +-inf instead of overflowing.
  double to_double() const;
  /// log2|x| without going through double; -inf for zero.
  double log2_abs() const;

  std::string to_string() const;

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace fibla
