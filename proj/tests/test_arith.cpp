#include <random>

#include "doctest.h"
#include "fibla/error.hpp"
#include "fibla/exponent.hpp"
#include "fibla/real.hpp"

using namespace fibla;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

// |r - v| <= error bound of r + slack
bool near(const Real& r, double v, double slack = 1e-30) {
  return std::abs(r.to_double() - v) <= r.error_bound_double() + slack + 1e-15 * std::abs(v);
}

Rational random_rational(std::mt19937_64& rng, long span = 1000) {
  std::uniform_int_distribution<long> num(-span, span);
  std::uniform_int_distribution<long> den(1, span);
  return Rational(BigInt(num(rng)), BigInt(den(rng)));
}

}  // namespace

TEST_CASE("rational canonical form and parsing") {
  CHECK(q("21/2") == Rational(BigInt(42), BigInt(4)));
  CHECK(q("-7") == Rational(-7));
  CHECK(Rational(BigInt(3), BigInt(-6)).den() == 2);
  CHECK(Rational(BigInt(3), BigInt(-6)).num() == -1);
  CHECK(q("4/6").to_string() == "2/3");
  CHECK_THROWS_AS(q("1/0"), Error);
  CHECK_THROWS_AS(q("abc"), Error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
}

TEST_CASE("rational arithmetic round-trips exactly") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const Rational a = random_rational(rng, 1L << 40);
    const Rational b = random_rational(rng, 1L << 40);
    CHECK((a + b) - b == a);
    if (!b.is_zero()) CHECK((a * b) / b == a);
  }
}

TEST_CASE("conjugate exponent") {
  CHECK(Exponent(Rational(2)).conjugate() == Exponent(Rational(2)));
  CHECK(Exponent(Rational(1)).conjugate().is_infinite());
  CHECK(Exponent::infinity().conjugate() == Exponent(Rational(1)));
  CHECK(Exponent(q("4/3")).conjugate() == Exponent(Rational(4)));
  for (const char* s : {"1", "3/2", "2", "7/3", "10"}) {
    const Exponent p(q(s));
    CHECK(p.conjugate().conjugate() == p);
  }
  CHECK(Exponent::parse("inf").is_infinite());
  CHECK(Exponent::parse("3/2").value() == q("3/2"));
  CHECK_THROWS_AS(Exponent(q("1/2")), Error);
}

TEST_CASE("rpow") {
  const Real two = rpow(Rational(4), Exponent(q("1/1")), 256);
  CHECK(two.is_exact());
  CHECK(pow_nonneg(Real::exact(Rational(4)), q("1/2")).exact_value() == Rational(2));
  CHECK(rpow(Rational(0), Exponent(Rational(3))).exact_value() == Rational(0));
  const Real r = rpow(Rational(2), Exponent(q("3/2")));
  CHECK(near(r, 2.8284271247461903));
  CHECK(r.error_bound_double() < 1e-60);
  // r^2 brackets 8
  const Real sq = r * r;
  CHECK(sq.contains(Rational(8)));
  CHECK(rpow(Rational(-2), Exponent(Rational(3))).exact_value() == Rational(-8));
  CHECK_THROWS_AS(rpow(Rational(-2), Exponent(q("3/2"))), Error);
}

TEST_CASE("window_norm examples") {
  std::vector<Rational> a{1, 1, 0, 0};
  const Real n2 = window_norm(a, Exponent(Rational(2)));
  CHECK(near(n2, std::sqrt(2.0)));
  CHECK(!n2.is_exact());
  std::vector<Rational> b{1, -1, 0};
  const Real ninf = window_norm(b, Exponent::infinity());
  CHECK(ninf.exact_value() == Rational(1));
  std::vector<Rational> c{3, 4};
  CHECK(window_norm(c, Exponent(Rational(2))).exact_value() == Rational(5));
  CHECK(window_norm(c, Exponent(Rational(1))).exact_value() == Rational(7));
  CHECK_THROWS_AS(window_norm(std::span<const Rational>{}, Exponent(Rational(2))), Error);
  CHECK_THROWS_AS(window_norm(c, Exponent(Rational(2)), 32), Error);
}

TEST_CASE("window_norm tolerance") {
  std::vector<Rational> a{1, 1};
  try {
    (void)window_norm(a, Exponent(Rational(3)), 64, 1e-300);
    FAIL("expected precision-exhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPrecisionExhausted);
  }
}

TEST_CASE("window_norm homogeneity") {
  std::mt19937_64 rng(11);
  const Exponent p(q("3/2"));
  for (int t = 0; t < 50; ++t) {
    std::vector<Rational> x(8);
    for (auto& v : x) v = random_rational(rng, 50);
    const Rational c = random_rational(rng, 20);
    std::vector<Rational> cx;
    for (const auto& v : x) cx.push_back(c * v);
    const Real lhs = window_norm(cx, p);
    const Real rhs = Real::exact(c.abs()) * window_norm(x, p);
    CHECK(overlaps(lhs, rhs));
  }
}

TEST_CASE("window_norm monotone in p on normalized windows") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    std::vector<Rational> x(6);
    Rational total;
    for (auto& v : x) {
      v = random_rational(rng, 30);
      total += v.abs();
    }
    if (total.is_zero()) continue;
    for (auto& v : x) v = v / total;
    std::vector<Exponent> ps{Exponent(Rational(1)), Exponent(q("3/2")), Exponent(Rational(2)),
                             Exponent(Rational(3)), Exponent::infinity()};
    for (std::size_t i = 1; i < ps.size(); ++i) {
      const Real hi = window_norm(x, ps[i]);
      const Real lo = window_norm(x, ps[i - 1]);
      const bool ok = certainly_leq(hi, lo) || overlaps(hi, lo);
      CHECK(ok);
    }
  }
}

TEST_CASE("Real arithmetic keeps enclosure") {
  const Real a = pow_nonneg(Real::exact(Rational(2)), q("1/2"));
  const Real b = a * a - Real::exact(Rational(2));
  CHECK(b.contains(Rational(0)));
  CHECK(b.error_bound_double() < 1e-70);
  CHECK(Real::exact(q("1/3")).to_string() == "1/3");
  CHECK(a.to_string(10).find("±") != std::string::npos);
}
