#include "fibla/real.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "fibla/error.hpp"

namespace fibla {

Mpfr::Mpfr(long precision) {
  mpfr_init2(v_, static_cast<mpfr_prec_t>(precision));
  mpfr_set_zero(v_, 1);
}

Mpfr::Mpfr(const Mpfr& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Mpfr::Mpfr(Mpfr&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}

Mpfr& Mpfr::operator=(const Mpfr& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Mpfr& Mpfr::operator=(Mpfr&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Mpfr::~Mpfr() { mpfr_clear(v_); }

namespace {

Mpfr from_rational(const Rational& q, long precision, mpfr_rnd_t rnd) {
  Mpfr m(precision);
  mpfr_set_q(m.get(), q.get().get_mpq_t(), rnd);
  return m;
}

// Exact b-th root of a non-negative rational, if one exists.
std::optional<Rational> exact_root(const Rational& y, unsigned long b) {
  if (b == 1) return y;
  BigInt rn;
  BigInt rd;
  const BigInt n = y.num();
  const BigInt d = y.den();
  if (mpz_root(rn.get_mpz_t(), n.get_mpz_t(), b) == 0) return std::nullopt;
  if (mpz_root(rd.get_mpz_t(), d.get_mpz_t(), b) == 0) return std::nullopt;
  return Rational(rn, rd);
}

unsigned long to_ulong(const BigInt& v, const char* what) {
  if (!v.fits_ulong_p()) throw Error(ErrorCode::kDomain, std::string(what) + " too large");
  return v.get_ui();
}

}  // namespace

Real Real::exact(const Rational& q, long precision) {
  return Real(from_rational(q, precision, MPFR_RNDD), from_rational(q, precision, MPFR_RNDU), q);
}

Real Real::from_bounds(Mpfr lower, Mpfr upper) {
  if (mpfr_cmp(lower.get(), upper.get()) > 0) {
    throw Error(ErrorCode::kDomain, "interval with lower > upper");
  }
  return Real(std::move(lower), std::move(upper), std::nullopt);
}

Mpfr Real::midpoint() const {
  Mpfr m(precision());
  if (exact_) {
    mpfr_set_q(m.get(), exact_->get().get_mpq_t(), MPFR_RNDN);
    return m;
  }
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m;
}

Mpfr Real::error_bound() const {
  Mpfr e(precision());
  if (exact_) return e;
  const Mpfr m = midpoint();
  Mpfr a(precision());
  Mpfr b(precision());
  mpfr_sub(a.get(), hi_.get(), m.get(), MPFR_RNDU);
  mpfr_sub(b.get(), m.get(), lo_.get(), MPFR_RNDU);
  mpfr_max(e.get(), a.get(), b.get(), MPFR_RNDU);
  return e;
}

double Real::error_bound_double() const {
  const Mpfr e = error_bound();
  return mpfr_get_d(e.get(), MPFR_RNDU);
}

double Real::to_double() const {
  const Mpfr m = midpoint();
  return mpfr_get_d(m.get(), MPFR_RNDN);
}

std::string Real::to_string(int digits) const {
  if (exact_) return exact_->to_string();
  const Mpfr m = midpoint();
  const Mpfr e = error_bound();
  char* mid_text = nullptr;
  char* err_text = nullptr;
  mpfr_asprintf(&mid_text, "%.*Rg", digits, m.get());
  mpfr_asprintf(&err_text, "%.3RUe", e.get());
  std::string out = std::string(mid_text) + " ± " + err_text;
  mpfr_free_str(mid_text);
  mpfr_free_str(err_text);
  return out;
}

bool Real::contains(const Rational& q) const {
  if (exact_) return *exact_ == q;
  return mpfr_cmp_q(lo_.get(), q.get().get_mpq_t()) <= 0 &&
         mpfr_cmp_q(hi_.get(), q.get().get_mpq_t()) >= 0;
}

Real Real::operator-() const {
  Mpfr lo(precision());
  Mpfr hi(precision());
  mpfr_neg(lo.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
  std::optional<Rational> ex;
  if (exact_) ex = -*exact_;
  return Real(std::move(lo), std::move(hi), std::move(ex));
}

Real Real::abs() const {
  if (mpfr_sgn(lo_.get()) >= 0) return *this;
  if (mpfr_sgn(hi_.get()) <= 0) return -*this;
  // Straddles zero.
  Mpfr lo(precision());
  Mpfr hi(precision());
  Mpfr neg_lo(precision());
  mpfr_neg(neg_lo.get(), lo_.get(), MPFR_RNDU);
  mpfr_max(hi.get(), neg_lo.get(), hi_.get(), MPFR_RNDU);
  std::optional<Rational> ex;
  if (exact_) ex = exact_->abs();
  return Real(std::move(lo), std::move(hi), std::move(ex));
}

Real operator+(const Real& a, const Real& b) {
  const long prec = std::max(a.precision(), b.precision());
  if (a.exact_ && b.exact_) return Real::exact(*a.exact_ + *b.exact_, prec);
  Mpfr lo(prec);
  Mpfr hi(prec);
  mpfr_add(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return Real(std::move(lo), std::move(hi), std::nullopt);
}

Real operator-(const Real& a, const Real& b) { return a + (-b); }

Real operator*(const Real& a, const Real& b) {
  const long prec = std::max(a.precision(), b.precision());
  if (a.exact_ && b.exact_) return Real::exact(*a.exact_ * *b.exact_, prec);
  const mpfr_srcptr xa[2] = {a.lo_.get(), a.hi_.get()};
  const mpfr_srcptr xb[2] = {b.lo_.get(), b.hi_.get()};
  Mpfr lo(prec);
  Mpfr hi(prec);
  Mpfr t(prec);
  bool first = true;
  for (auto* p : xa) {
    for (auto* q : xb) {
      mpfr_mul(t.get(), p, q, MPFR_RNDD);
      if (first || mpfr_cmp(t.get(), lo.get()) < 0) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), p, q, MPFR_RNDU);
      if (first || mpfr_cmp(t.get(), hi.get()) > 0) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return Real(std::move(lo), std::move(hi), std::nullopt);
}

bool certainly_less(const Real& a, const Real& b) {
  return mpfr_cmp(a.upper().get(), b.lower().get()) < 0;
}

bool certainly_leq(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return *a.exact_value() <= *b.exact_value();
  return mpfr_cmp(a.upper().get(), b.lower().get()) <= 0;
}

bool overlaps(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return *a.exact_value() == *b.exact_value();
  return mpfr_cmp(a.upper().get(), b.lower().get()) >= 0 &&
         mpfr_cmp(b.upper().get(), a.lower().get()) >= 0;
}

Real max(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) {
    return *a.exact_value() < *b.exact_value() ? b : a;
  }
  if (certainly_leq(b, a)) return a;
  if (certainly_leq(a, b)) return b;
  const long prec = std::max(a.precision(), b.precision());
  Mpfr lo(prec);
  Mpfr hi(prec);
  mpfr_max(lo.get(), a.lower().get(), b.lower().get(), MPFR_RNDD);
  mpfr_max(hi.get(), a.upper().get(), b.upper().get(), MPFR_RNDU);
  return Real::from_bounds(std::move(lo), std::move(hi));
}

Real pow_nonneg(const Real& x, const Rational& e) {
  if (e.sign() <= 0) throw Error(ErrorCode::kDomain, "pow_nonneg needs a positive exponent");
  const unsigned long num = to_ulong(e.num(), "exponent numerator");
  const unsigned long den = to_ulong(e.den(), "exponent denominator");
  const long prec = x.precision();
  if (x.is_exact()) {
    const Rational& q = *x.exact_value();
    if (q.sign() < 0) throw Error(ErrorCode::kNegativeBase, "base " + q.to_string());
    const Rational y = q.pow(num);
    if (auto r = exact_root(y, den)) return Real::exact(*r, prec);
    Mpfr lo = from_rational(y, prec, MPFR_RNDD);
    Mpfr hi = from_rational(y, prec, MPFR_RNDU);
    mpfr_rootn_ui(lo.get(), lo.get(), den, MPFR_RNDD);
    mpfr_rootn_ui(hi.get(), hi.get(), den, MPFR_RNDU);
    return Real::from_bounds(std::move(lo), std::move(hi));
  }
  if (mpfr_sgn(x.upper().get()) < 0) throw Error(ErrorCode::kNegativeBase, "negative interval");
  Mpfr lo = x.lower();
  Mpfr hi = x.upper();
  if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo.get(), 1);
  mpfr_pow_ui(lo.get(), lo.get(), num, MPFR_RNDD);
  mpfr_pow_ui(hi.get(), hi.get(), num, MPFR_RNDU);
  if (den != 1) {
    mpfr_rootn_ui(lo.get(), lo.get(), den, MPFR_RNDD);
    mpfr_rootn_ui(hi.get(), hi.get(), den, MPFR_RNDU);
  }
  return Real::from_bounds(std::move(lo), std::move(hi));
}

Real rpow(const Rational& x, const Exponent& p, long precision) {
  if (p.is_infinite()) throw Error(ErrorCode::kDomain, "rpow with infinite exponent");
  const Rational& e = p.value();
  if (e.is_integer()) {
    return Real::exact(x.pow(to_ulong(e.num(), "exponent")), precision);
  }
  if (x.sign() < 0) {
    throw Error(ErrorCode::kNegativeBase, "non-integer power of " + x.to_string());
  }
  return pow_nonneg(Real::exact(x, precision), e);
}

Real power_sum(std::span<const Rational> x, const Rational& p, long precision) {
  if (p.is_integer()) {
    const unsigned long e = to_ulong(p.num(), "exponent");
    Rational s;
    for (const auto& v : x) s += v.abs().pow(e);
    return Real::exact(s, precision);
  }
  Real s = Real::exact(Rational(0), precision);
  for (const auto& v : x) s = s + pow_nonneg(Real::exact(v.abs(), precision), p);
  return s;
}

namespace {

void check_tolerance(const Real& r, std::optional<double> tolerance) {
  if (tolerance && r.error_bound_double() > *tolerance) {
    throw Error(ErrorCode::kPrecisionExhausted,
                "certified error " + std::to_string(r.error_bound_double()) +
                    " exceeds tolerance " + std::to_string(*tolerance));
  }
}

void check_window(std::size_t n, long precision) {
  if (n == 0) throw Error(ErrorCode::kWindowMismatch, "empty window");
  if (precision < 64) throw Error(ErrorCode::kDomain, "precision below 64 bits");
}

}  // namespace

Real window_norm(std::span<const Rational> x, const Exponent& p, long precision,
                 std::optional<double> tolerance) {
  check_window(x.size(), precision);
  if (p.is_infinite()) {
    Rational m;
    for (const auto& v : x) m = max(m, v.abs());
    return Real::exact(m, precision);
  }
  const Real s = power_sum(x, p.value(), precision);
  Real r = pow_nonneg(s, p.value().inverse());
  check_tolerance(r, tolerance);
  return r;
}

Real window_norm(std::span<const Real> x, const Exponent& p, long precision,
                 std::optional<double> tolerance) {
  check_window(x.size(), precision);
  bool all_exact = true;
  for (const auto& v : x) all_exact = all_exact && v.is_exact();
  if (all_exact) {
    std::vector<Rational> q;
    q.reserve(x.size());
    for (const auto& v : x) q.push_back(*v.exact_value());
    return window_norm(q, p, precision, tolerance);
  }
  Real r = Real::exact(Rational(0), precision);
  if (p.is_infinite()) {
    for (const auto& v : x) r = max(r, v.abs());
  } else {
    for (const auto& v : x) r = r + pow_nonneg(v.abs(), p.value());
    r = pow_nonneg(r, p.value().inverse());
  }
  check_tolerance(r, tolerance);
  return r;
}

}  // namespace fibla
