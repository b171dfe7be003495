#include <cmath>
#include <random>

#include "doctest.h"
#include "fibla/error.hpp"
#include "fibla/operators.hpp"
#include "fibla/spaces.hpp"

using namespace fibla;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

const LambdaSeq kLinear = LambdaSeq::linear(1, 1);
const LambdaSeq kGeometric = LambdaSeq::geometric(2, 1);

SeqWindow random_window(std::mt19937_64& rng, std::size_t n, long span = 50) {
  std::uniform_int_distribution<long> num(-span, span);
  std::uniform_int_distribution<long> den(1, span);
  std::vector<Rational> v(n);
  for (auto& x : v) x = Rational(BigInt(num(rng)), BigInt(den(rng)));
  return SeqWindow(std::move(v));
}

bool close_to(const Real& r, double v) {
  return std::abs(r.to_double() - v) <= r.error_bound_double() + 1e-12 * std::max(1.0, std::abs(v));
}

RealWindow power_law(std::size_t n, long prec) {
  return gen_witness_real("power-law", kLinear, Exponent(Rational(2)), n, prec);
}

}  // namespace

TEST_CASE("space_norm examples") {
  const Exponent two(Rational(2));
  for (const auto& lam : {kLinear, kGeometric}) {
    const auto u = gen_witness("u", lam, std::nullopt, 12);
    const auto est = space_norm(u, lam, two);
    CHECK(close_to(est.value, std::sqrt(2.0)));
    CHECK(est.value.contains(Rational(0)) == false);
  }
  const auto t = gen_witness("t", kLinear, std::nullopt, 50);
  const auto sup = space_norm(t, kLinear, Exponent::infinity());
  CHECK(sup.value.exact_value() == Rational(1));
  CHECK(space_norm(SeqWindow::zeros(6), kLinear, two).value.exact_value() == Rational(0));
  const auto t1 = space_norm(t, kLinear, Exponent(Rational(1)));
  CHECK(t1.value.exact_value() == Rational(50));
  CHECK(t1.tail_fraction == doctest::Approx(12.0 / 50.0));
}

TEST_CASE("space_norm axioms") {
  std::mt19937_64 rng(9);
  const Exponent p(q("3/2"));
  for (int t = 0; t < 50; ++t) {
    const auto x = random_window(rng, 10);
    const auto y = random_window(rng, 10);
    std::vector<Rational> s(10);
    for (std::size_t i = 0; i < 10; ++i) s[i] = x[i] + y[i];
    const Real nx = space_norm(x, kLinear, p).value;
    const Real ny = space_norm(y, kLinear, p).value;
    const Real ns = space_norm(SeqWindow(s), kLinear, p).value;
    CHECK_FALSE(certainly_less(nx + ny, ns));
    const Rational c = Rational(BigInt(-3), BigInt(7));
    std::vector<Rational> cx(10);
    for (std::size_t i = 0; i < 10; ++i) cx[i] = c * x[i];
    CHECK(overlaps(space_norm(SeqWindow(cx), kLinear, p).value, Real::exact(c.abs()) * nx));
  }
}

TEST_CASE("non-absolute type") {
  const auto v = gen_witness("v-hilbert", kLinear, std::nullopt, 8);
  std::vector<Rational> a;
  for (const auto& e : v.values()) a.push_back(e.abs());
  const Exponent two(Rational(2));
  const Real nv = space_norm(v, kLinear, two).value;
  const Real na = space_norm(SeqWindow(a), kLinear, two).value;
  const bool apart = certainly_less(nv, na) || certainly_less(na, nv);
  CHECK(apart);
}

TEST_CASE("parallelogram") {
  const auto r2 = parallelogram_check(kLinear, Exponent(Rational(2)));
  CHECK(r2.lhs.exact_value() == Rational(8));
  CHECK(r2.rhs.exact_value() == Rational(8));
  CHECK(r2.equal);
  for (const char* s : {"1", "3/2", "3", "4"}) {
    const Exponent p(q(s));
    const auto r = parallelogram_check(kLinear, p);
    CHECK(r.lhs.contains(Rational(8)));
    CHECK(close_to(r.rhs, 4.0 * std::pow(2.0, 2.0 / p.value().to_double())));
    CHECK_FALSE(r.equal);
    CHECK(r.separated);
  }
  CHECK(parallelogram_check(kLinear, Exponent(Rational(1))).rhs.exact_value() == Rational(16));
}

TEST_CASE("lambda_M") {
  const auto m2 = lambda_M(kGeometric, 32);
  const Real diff = m2.value - Real::exact(Rational(2));
  CHECK(std::abs(diff.to_double()) + diff.error_bound_double() < 1e-20);
  CHECK(m2.verdict.holds());
  const auto m3 = lambda_M(LambdaSeq::geometric(3, 1), 16);
  CHECK(std::abs((m3.value - Real::exact(q("3/2"))).to_double()) < 1e-20);
  for (std::size_t k = 1; k < m3.tails.size(); ++k) {
    CHECK(std::abs(m3.tails[k].to_double() - 1) < 1e-25);
  }
  try {
    lambda_M(kLinear, 8);
    FAIL("expected divergent-tail");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDivergentTail);
  }
}

TEST_CASE("inclusion bounds") {
  std::vector<Rational> ones(24, Rational(1));
  const auto r = inclusion_bounds_check(SeqWindow(ones), kLinear, Exponent(Rational(2)));
  CHECK(r.linf_holds);
  CHECK(r.linf_rhs == Rational(4));
  CHECK_FALSE(r.lp_lhs.has_value());
  const auto z = inclusion_bounds_check(SeqWindow::zeros(4), kLinear, Exponent::infinity());
  CHECK(z.linf_lhs == Rational(0));
  CHECK(z.linf_holds);
  std::mt19937_64 rng(31);
  const Real M = lambda_M(kGeometric, 32).value;
  for (int t = 0; t < 100; ++t) {
    const auto x = random_window(rng, 24, 1000);
    const auto rep = inclusion_bounds_check(x, kGeometric, Exponent(Rational(2)), M);
    CHECK(rep.linf_holds);
    REQUIRE(rep.lp_holds.has_value());
    CHECK(*rep.lp_holds);
  }
}

TEST_CASE("membership evidence") {
  const auto sweep = default_sweep(16, 256);
  const auto t = parse_sequence("witness:t", kLinear);
  CHECK(membership_evidence(t, kLinear, Exponent(Rational(2)), sweep).status ==
        Status::kEvidenceDiverging);
  const auto alt = parse_sequence("witness:alternating", kLinear);
  const auto va = membership_evidence(alt, kLinear, Exponent::infinity(), sweep);
  CHECK(va.status == Status::kEvidenceBounded);
  CHECK(va.sweep.back().text == "1");

  const auto vp = membership_evidence_real(power_law, kLinear, Exponent(Rational(2)), sweep);
  CHECK(vp.status == Status::kEvidenceDiverging);
  const auto vs = membership_evidence_real(power_law, kLinear, Exponent::infinity(), sweep);
  CHECK(vs.status == Status::kEvidenceBounded);
  const auto v3 = membership_evidence_real(power_law, kLinear, Exponent(Rational(3)), sweep);
  CHECK(v3.status == Status::kEvidenceBounded);
  // (sum (n+1)^(-3/2))^(1/3) < zeta(3/2)^(1/3)
  CHECK(v3.sweep.back().value < 1.3777);

  const auto e0 = parse_sequence("unit:0", kLinear);
  CHECK(membership_evidence(e0, kLinear, Exponent::infinity(), sweep).status ==
        Status::kHoldsExactly);
  CHECK(membership_evidence(e0, kGeometric, Exponent(Rational(2)), sweep).status ==
        Status::kHoldsExactly);
  CHECK(membership_evidence(parse_sequence("zero", kLinear), kLinear, Exponent(Rational(2)), sweep)
            .status == Status::kHoldsExactly);
}

TEST_CASE("verdict classifier") {
  std::vector<SweepPoint> flat, grow, decay;
  for (std::size_t n = 8; n <= 512; n *= 2) {
    flat.push_back(SweepPoint::of(n, Rational(3)));
    grow.push_back(SweepPoint::of(n, Rational(static_cast<unsigned long>(n))));
    decay.push_back(SweepPoint::of(n, Rational(BigInt(1), BigInt(n))));
  }
  CHECK(classify_growth(flat).status == Status::kEvidenceBounded);
  CHECK(classify_growth(grow).status == Status::kEvidenceDiverging);
  CHECK(classify_growth(grow).slope == doctest::Approx(1.0));
  CHECK(classify_decay(decay).status == Status::kEvidenceBounded);
  CHECK(classify_decay(flat).status == Status::kEvidenceDiverging);
  CHECK(classify_growth({}).status == Status::kInconclusive);
  std::vector<Verdict> parts(2);
  parts[0].status = Status::kHoldsExactly;
  parts[1].status = Status::kHoldsExactly;
  CHECK(conjunction(parts).status == Status::kHoldsExactly);
  parts[1].status = Status::kEvidenceBounded;
  CHECK(conjunction(parts).status == Status::kEvidenceBounded);
  parts[0].status = Status::kInconclusive;
  CHECK(conjunction(parts).status == Status::kInconclusive);
  parts[1].status = Status::kEvidenceDiverging;
  CHECK(conjunction(parts).status == Status::kEvidenceDiverging);
}
