#include "fibla/rational.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "fibla/error.hpp"

namespace fibla {

namespace {

bool parse_integer(std::string_view s, BigInt& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j) {
    if (s[j] < '0' || s[j] > '9') return false;
  }
  std::string digits(s.substr(s[0] == '+' ? 1 : 0));
  return out.set_str(digits, 10) == 0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' ||
                        s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(ErrorCode::kDomain, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  BigInt num;
  BigInt den = 1;
  if (slash == std::string_view::npos) {
    if (!parse_integer(s, num)) {
      throw Error(ErrorCode::kParse, "not a rational: '" + std::string(text) + "'");
    }
  } else {
    const auto d = s.substr(slash + 1);
    if (!parse_integer(s.substr(0, slash), num) || !parse_integer(d, den) || d[0] == '-' ||
        d[0] == '+') {
      throw Error(ErrorCode::kParse, "not a rational: '" + std::string(text) + "'");
    }
    if (den == 0) throw Error(ErrorCode::kParse, "zero denominator: '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(q_))); }

Rational Rational::inverse() const {
  if (is_zero()) throw Error(ErrorCode::kDomain, "inverse of zero");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), q_.get_mpq_t());
  return Rational(r);
}

Rational Rational::pow(unsigned long e) const {
  BigInt n;
  BigInt d;
  mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), e);
  mpq_class r(n, d);
  return Rational(r);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::kDomain, "division by zero");
  q_ /= o.q_;
  return *this;
}

double Rational::to_double() const {
  if (is_zero()) return 0.0;
  const double l2 = log2_abs();
  if (l2 > 1023.0) {
    return sign() > 0 ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
  }
  if (l2 < -1070.0) return 0.0;
  return q_.get_d();
}

double Rational::log2_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  long exp_n = 0;
  long exp_d = 0;
  const double mn = mpz_get_d_2exp(&exp_n, q_.get_num_mpz_t());
  const double md = mpz_get_d_2exp(&exp_d, q_.get_den_mpz_t());
  return std::log2(std::fabs(mn)) - std::log2(md) + static_cast<double>(exp_n - exp_d);
}

std::string Rational::to_string() const { return q_.get_str(10); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace fibla
