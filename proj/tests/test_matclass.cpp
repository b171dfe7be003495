#include <random>

#include "doctest.h"
#include "fibla/error.hpp"
#include "fibla/fibonacci.hpp"
#include "fibla/matclass.hpp"
#include "fibla/mnc.hpp"
#include "fibla/operators.hpp"

using namespace fibla;

namespace {

const LambdaSeq kLinear = LambdaSeq::linear(1, 1);
const LambdaSeq kGeometric = LambdaSeq::geometric(2, 1);
const Exponent kTwo(Rational(2));

Rational random_q(std::mt19937_64& rng, long span = 9) {
  std::uniform_int_distribution<long> num(-span, span);
  std::uniform_int_distribution<long> den(1, span);
  return Rational(BigInt(num(rng)), BigInt(den(rng)));
}

Matrix random_dense(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
  for (auto& r : a) {
    for (auto& v : r) v = random_q(rng);
  }
  return Matrix::from_rows(std::move(a));
}

Matrix single_row() { return Matrix::from_rows({{Rational(1)}}); }
Matrix two_rows() { return Matrix::from_rows({{Rational(1)}, {Rational(1)}}); }

std::vector<std::pair<SpaceSpec, SpaceSpec>> supported_pairs() {
  const SpaceSpec l1 = SpaceSpec::l1(), lp = SpaceSpec::lp(kTwo), linf = SpaceSpec::linf();
  std::vector<std::pair<SpaceSpec, SpaceSpec>> out;
  for (const auto& X : {l1, lp, linf}) {
    for (const auto& Y : {linf, SpaceSpec::c(), SpaceSpec::c0(), l1}) out.emplace_back(X, Y);
  }
  out.emplace_back(l1, SpaceSpec::lp(Exponent(Rational(3))));
  out.emplace_back(linf, lp);
  return out;
}

}  // namespace

TEST_CASE("matrix JSON") {
  const auto d = Matrix::from_json_text(R"({"kind":"dense","rows":[["1","2/3"],[0,"-1"]]})", kLinear);
  CHECK(d(0, 1) == Rational::parse("2/3"));
  CHECK(d(1, 1) == Rational(-1));
  CHECK(d(5, 0).is_zero());
  CHECK(d.finite());
  CHECK(*d.shape().nonzero_rows == 2);

  const auto b = Matrix::from_json_text(R"({"kind":"band","bands":{"0":["1","1","1"],"-1":[0,"2","2"]}})", kLinear);
  CHECK(b(1, 0) == Rational(2));
  CHECK(b(2, 2) == Rational(1));
  CHECK(b(2, 0).is_zero());

  const auto r = Matrix::from_json_text(R"({"kind":"rows","rows":{"3":{"5":"7"}},"size":6,"tail":"unavailable"})", kLinear);
  CHECK(r(3, 5) == Rational(7));
  CHECK(r(0, 0).is_zero());
  CHECK_THROWS_AS(r(6, 0), Error);
  CHECK_FALSE(r.finite());

  const auto e = Matrix::from_json_text(R"({"kind":"E","lambda":"linear:2,3"})", kLinear);
  CHECK(e(3, 1) == make_E(LambdaSeq::linear(2, 3))(3, 1));
  CHECK(Matrix::from_json_text(R"({"kind":"identity"})", kLinear)(4, 4) == Rational(1));

  for (const char* bad : {"{", R"({"rows":[]})", R"({"kind":"dense","rows":[["x"]]})",
                          R"({"kind":"spiral"})", R"({"kind":"dense","rows":[[1.5]]})"}) {
    try {
      Matrix::from_json_text(bad, kLinear);
      FAIL("expected parse error for " << bad);
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::kParse);
    }
  }
  try {
    Matrix::from_file("/nonexistent/m.json", kLinear);
    FAIL("expected io error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kIo);
  }
}

TEST_CASE("hat matrix entries") {
  const HatMatrix I(Matrix::identity(), kLinear);
  CHECK(I.entry(1, 1) == Rational(4));
  const HatMatrix one(single_row(), kLinear);
  CHECK(one.entry(0, 0) == Rational(1));
  for (std::size_t k = 1; k < 6; ++k) CHECK(one.entry(0, k).is_zero());
  const HatMatrix z(Matrix::zero(), kLinear);
  CHECK(z.entry(3, 2).is_zero());
  CHECK(z.row(3).empty());

  // A = E gives the identity.
  const HatMatrix eye(Matrix::from_triangle(make_E(kGeometric)), kGeometric);
  for (std::size_t n = 0; n < 12; ++n) {
    for (std::size_t k = 0; k < 12; ++k) CHECK(eye.entry(n, k) == Rational(n == k ? 1 : 0));
  }
}

TEST_CASE("hat matrix: two routes agree") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 4; ++t) {
    const LambdaSeq& lam = t % 2 ? kGeometric : kLinear;
    const Matrix A = random_dense(rng, 17, 17);
    const HatMatrix H(A, lam);
    bool same = true;
    for (std::size_t n = 0; n <= 16; ++n) {
      for (std::size_t k = 0; k <= 16; ++k) same = same && H.entry(n, k) == ehat_pairing(A, lam, n, k);
    }
    CHECK(same);
    // Partial sums reach the entry at the row support.
    for (std::size_t k = 0; k < 16; ++k) CHECK(H.partial(3, k, 16) == H.entry(3, k));
  }
  CHECK_THROWS_AS(HatMatrix(Matrix::identity(), kLinear).partial(0, 2, 2), Error);
}

TEST_CASE("divergent row series") {
  const Matrix ones("ones", [](std::size_t, std::size_t) { return Rational(1); },
                    [](std::size_t) { return std::optional<std::size_t>(); },
                    Matrix::Shape{std::nullopt, 1, false});
  const HatMatrix H(ones, kLinear, 64);
  try {
    H.entry(0, 0);
    FAIL("expected row-series-divergent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kRowSeriesDivergent);
  }
  // Summable weights: f_{j+1}^-3 a_nj.
  const Matrix decay("decay", [](std::size_t, std::size_t k) {
    const Rational f = fib_q(k + 1);
    return (f * f * f * f).inverse();
  }, [](std::size_t) { return std::optional<std::size_t>(); }, Matrix::Shape{std::nullopt, 1, false});
  const HatMatrix D(decay, kLinear, 64);
  CHECK_FALSE(D.exact_row(0));
  CHECK(D.row_series(0).status == Status::kEvidenceBounded);
  CHECK(D.entry(0, 0).sign() != 0);
}

TEST_CASE("class conditions") {
  CHECK(class_conditions(SpaceSpec::lp(kTwo), SpaceSpec::linf()) ==
        std::vector<std::string>{"row-series", "diag-bounded", "row-q-norms", "rows-in-beta-dual"});
  CHECK(class_conditions(SpaceSpec::linf(), SpaceSpec::c0()) ==
        std::vector<std::string>{"row-series", "diag-bounded", "partial-uniform", "rows-to-zero"});
  CHECK(class_conditions(SpaceSpec::l1(), SpaceSpec::l1()) ==
        std::vector<std::string>{"row-series", "diag-bounded", "entries-bounded", "column-l1-sums"});
  CHECK(class_conditions(SpaceSpec::linf(), SpaceSpec::lp(kTwo)) ==
        std::vector<std::string>{"row-series", "diag-bounded", "row-abs-convergent", "column-subset-p"});
  for (const auto& [X, Y] : std::vector<std::pair<SpaceSpec, SpaceSpec>>{
           {SpaceSpec::lp(kTwo), SpaceSpec::lp(Exponent(Rational(3)))}, {SpaceSpec::c0(), SpaceSpec::linf()}}) {
    try {
      class_conditions(X, Y);
      FAIL("expected unsupported-pair");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kUnsupportedPair);
    }
  }
}

TEST_CASE("class_check on finite matrices") {
  std::mt19937_64 rng(3);
  const std::vector<Matrix> cases = {Matrix::zero(), single_row(), two_rows(), random_dense(rng, 8, 8)};
  for (const auto& A : cases) {
    for (const auto& [X, Y] : supported_pairs()) {
      const auto rep = class_check(A, kLinear, X, Y);
      CHECK(rep.verdict.status == Status::kHoldsExactly);
      CHECK(rep.conditions.size() == class_conditions(X, Y).size());
      for (const auto& c : rep.conditions) CHECK(c.verdict.status == Status::kHoldsExactly);
    }
  }
  const auto rep = class_check(single_row(), kLinear, SpaceSpec::lp(kTwo), SpaceSpec::linf());
  CHECK(rep.conditions[2].value == "1");
  // The norm and the class condition read the same quantity.
  const Matrix A = random_dense(rng, 8, 8);
  const auto cls = class_check(A, kLinear, SpaceSpec::l1(), SpaceSpec::linf());
  const auto nrm = op_norm(A, kLinear, Exponent(Rational(1)), SpaceSpec::linf());
  CHECK(cls.conditions[2].value == nrm.low.exact_value()->to_string());
}

TEST_CASE("class_check evidence on infinite matrices") {
  const auto rep = class_check(Matrix::identity(), kLinear, SpaceSpec::lp(kTwo), SpaceSpec::linf());
  CHECK(rep.verdict.status == Status::kEvidenceDiverging);
  CHECK(rep.conditions[0].verdict.status == Status::kHoldsExactly);
  CHECK(rep.conditions[2].verdict.status == Status::kEvidenceDiverging);
  // E maps onto the identity hat matrix, which is in (l_p : c0).
  const auto ok = class_check(Matrix::from_triangle(make_E(kLinear)), kLinear, SpaceSpec::lp(kTwo),
                              SpaceSpec::c0());
  CHECK(ok.verdict.holds());
}

TEST_CASE("C = E A") {
  const Matrix C = corollary_C(Matrix::identity(), kLinear);
  const Triangle E = make_E(kLinear);
  bool same = true;
  for (std::size_t n = 0; n < 24; ++n) {
    for (std::size_t k = 0; k < 24; ++k) same = same && C(n, k) == (k <= n ? E(n, k) : Rational(0));
  }
  CHECK(same);
  CHECK(corollary_C(Matrix::zero(), kLinear)(5, 2).is_zero());

  std::mt19937_64 rng(12);
  DenseWindow w(16);
  for (std::size_t n = 0; n < 16; ++n) {
    for (std::size_t k = 0; k <= n; ++k) w.set(n, k, random_q(rng));
  }
  const Triangle At = Triangle::from_dense(w, true);
  const Matrix CA = corollary_C(Matrix::from_triangle(At), kGeometric);
  const Triangle EA = triangle_compose(make_E(kGeometric), At);
  same = true;
  for (std::size_t n = 0; n < 16; ++n) {
    for (std::size_t k = 0; k < 16; ++k) same = same && CA(n, k) == EA(n, k);
  }
  CHECK(same);
  const auto L2 = LambdaSeq::linear(2, 3);
  CHECK(corollary_C(Matrix::identity(), kLinear, L2)(4, 2) == make_E(L2)(4, 2));
}

TEST_CASE("operator norms") {
  const auto one = op_norm(single_row(), kLinear, kTwo, SpaceSpec::linf());
  CHECK(one.exact);
  CHECK(one.low.exact_value() == Rational(1));
  CHECK_FALSE(one.bracket);
  CHECK(op_norm(Matrix::zero(), kLinear, kTwo, SpaceSpec::c0()).high.exact_value() == Rational(0));
  const auto two = op_norm(two_rows(), kLinear, kTwo, SpaceSpec::l1());
  CHECK(two.bracket);
  CHECK(two.low.exact_value() == Rational(2));
  CHECK(two.high.exact_value() == Rational(8));
  try {
    op_norm(single_row(), kLinear, kTwo, SpaceSpec::lp(Exponent(Rational(3))));
    FAIL("expected unsupported-target");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnsupportedTarget);
  }
}

TEST_CASE("measure of noncompactness") {
  const auto m = mnc_estimate(single_row(), kLinear, kTwo, SpaceSpec::c0(), 8);
  CHECK(m.exact);
  CHECK(m.s[0].exact_value() == Rational(1));
  for (std::size_t r = 1; r <= 8; ++r) CHECK(m.s[r].exact_value() == Rational(0));
  CHECK(compactness_label(compactness_verdict(m)) == "compact");
  CHECK(compactness_verdict(Matrix::zero(), kLinear, kTwo, SpaceSpec::c(), 4).status == Status::kHoldsExactly);

  const auto eye = mnc_estimate(Matrix::from_triangle(make_E(kLinear)), kLinear, kTwo, SpaceSpec::c0(), 32);
  for (std::size_t r = 0; r <= 32; ++r) CHECK(eye.s[r].exact_value() == Rational(1));
  CHECK(compactness_label(compactness_verdict(eye)) == "evidence-noncompact");
  const auto eye_c = mnc_estimate(Matrix::from_triangle(make_E(kLinear)), kLinear, kTwo, SpaceSpec::c(), 16);
  CHECK(eye_c.high.to_double() == doctest::Approx(1.0));
  CHECK(eye_c.low.to_double() == doctest::Approx(0.5));

  const auto grow = mnc_estimate(Matrix::identity(), kLinear, kTwo, SpaceSpec::c0(), 8);
  CHECK(compactness_verdict(grow).status == Status::kEvidenceDiverging);
  try {
    mnc_estimate(Matrix::identity(), kLinear, kTwo, SpaceSpec::c(), 8);
    FAIL("expected alpha-limit-undetermined");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kAlphaLimitUndetermined);
  }
  CHECK_THROWS_AS(mnc_estimate(single_row(), kLinear, kTwo, SpaceSpec::c0(), 3), Error);
  CHECK_THROWS_AS(mnc_estimate(single_row(), kLinear, kTwo, SpaceSpec::linf(), 8), Error);

  const auto l1 = mnc_estimate(two_rows(), kLinear, kTwo, SpaceSpec::l1(), 4);
  CHECK(l1.s[0].exact_value() == Rational(2));
  CHECK(l1.s[1].exact_value() == Rational(1));
  CHECK(l1.s[2].exact_value() == Rational(0));
}

TEST_CASE("mnc monotone and dominated by the norm") {
  std::mt19937_64 rng(41);
  const std::vector<Matrix> cases = {Matrix::zero(), single_row(), two_rows(), random_dense(rng, 8, 8),
                                     Matrix::from_triangle(make_E(kLinear)), Matrix::identity()};
  for (const auto& A : cases) {
    for (const auto& p : {Exponent(Rational(1)), kTwo, Exponent::infinity()}) {
      for (const auto& Y : {SpaceSpec::c0(), SpaceSpec::l1()}) {
        const auto m = mnc_estimate(A, kLinear, p, Y, 8);
        for (std::size_t r = 0; r + 1 < m.s.size(); ++r) CHECK_FALSE(certainly_less(m.s[r], m.s[r + 1]));
        if (!A.finite()) continue;
        const auto n = op_norm(A, kLinear, p, Y);
        CHECK(m.exact);
        CHECK(m.limit.exact_value() == Rational(0));
        CHECK(compactness_verdict(m).status == Status::kHoldsExactly);
        CHECK_FALSE(certainly_less(n.high, m.high));
        CHECK_FALSE(certainly_less(n.low, m.low));
      }
    }
  }
}
