#pragma once

#include <mpfr.h>

#include <optional>
#include <span>
#include <string>

#include "fibla/exponent.hpp"
#include "fibla/rational.hpp"

namespace fibla {

/// Owning wrapper around an mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(long precision);
  Mpfr(const Mpfr& o);
  Mpfr(Mpfr&& o) noexcept;
  Mpfr& operator=(const Mpfr& o);
  Mpfr& operator=(Mpfr&& o) noexcept;
  ~Mpfr();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }

 private:
  mpfr_t v_;
};

/// A real number known to lie in [lower, upper], both ends held at an
/// explicit binary precision and produced with outward rounding. Values
/// that are known exactly also keep their rational form.
class Real {
 public:
  static constexpr long kDefaultPrecision = 256;

  static Real exact(const Rational& q, long precision = kDefaultPrecision);
  /// Requires lower <= upper.
  static Real from_bounds(Mpfr lower, Mpfr upper);

  long precision() const { return lo_.precision(); }
  bool is_exact() const { return exact_.has_value(); }
  const std::optional<Rational>& exact_value() const { return exact_; }

  const Mpfr& lower() const { return lo_; }
  const Mpfr& upper() const { return hi_; }
  /// Midpoint rounded to nearest.
  Mpfr midpoint() const;
  /// Certified absolute error of midpoint(), rounded up. Zero for exact values.
  Mpfr error_bound() const;
  double error_bound_double() const;

  double to_double() const;
  /// "value ± bound" with `digits` significant digits, or the rational when exact.
  std::string to_string(int digits = 30) const;

  bool contains(const Rational& q) const;
  bool is_nonnegative() const { return mpfr_sgn(lo_.get()) >= 0; }

  Real operator-() const;
  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  Real abs() const;

 private:
  Real(Mpfr lo, Mpfr hi, std::optional<Rational> exact)
      : lo_(std::move(lo)), hi_(std::move(hi)), exact_(std::move(exact)) {}

  Mpfr lo_;
  Mpfr hi_;
  std::optional<Rational> exact_;
};

/// a.upper < b.lower
bool certainly_less(const Real& a, const Real& b);
/// a.upper <= b.lower
bool certainly_leq(const Real& a, const Real& b);
bool overlaps(const Real& a, const Real& b);
/// Interval hull of max over both operands.
Real max(const Real& a, const Real& b);

/// x^e for a non-negative interval x and rational e > 0.
Real pow_nonneg(const Real& x, const Rational& e);

/// x^p. Integer p accepts any sign of x; non-integer p requires x >= 0
/// (ErrorCode::kNegativeBase). The error is at most 2^(guard - precision)
/// relative to max(1, |x^p|).
Real rpow(const Rational& x, const Exponent& p, long precision = Real::kDefaultPrecision);

/// (sum |x_k|^p)^(1/p) for finite p, max |x_k| for p = infinity (exact).
/// Throws kPrecisionExhausted if `tolerance` is given and the certified
/// error exceeds it.
Real window_norm(std::span<const Rational> x, const Exponent& p,
                 long precision = Real::kDefaultPrecision,
                 std::optional<double> tolerance = std::nullopt);
Real window_norm(std::span<const Real> x, const Exponent& p,
                 long precision = Real::kDefaultPrecision,
                 std::optional<double> tolerance = std::nullopt);

/// sum |x_k|^p without the outer root; exact for integer p.
Real power_sum(std::span<const Rational> x, const Rational& p,
               long precision = Real::kDefaultPrecision);

}  // namespace fibla
