#include <random>

#include "doctest.h"
#include "fibla/error.hpp"
#include "fibla/fibonacci.hpp"
#include "fibla/operators.hpp"
#include "fibla/witness.hpp"

using namespace fibla;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

const LambdaSeq kLinear = LambdaSeq::linear(1, 1);
const LambdaSeq kGeometric = LambdaSeq::geometric(2, 1);

SeqWindow random_window(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> num(-50, 50);
  std::uniform_int_distribution<long> den(1, 20);
  std::vector<Rational> v(n);
  for (auto& x : v) x = Rational(BigInt(num(rng)), BigInt(den(rng)));
  return SeqWindow(std::move(v));
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kDomain;
}

}  // namespace

TEST_CASE("Lambda matrix") {
  const auto L = make_lambda_matrix(kLinear);
  CHECK(L(2, 1) == q("1/3"));
  CHECK(L(0, 0) == Rational(1));
  CHECK(L(1, 3) == Rational(0));
  for (std::size_t n = 0; n <= 50; ++n) {
    Rational s;
    for (std::size_t k = 0; k <= n; ++k) s += L(n, k);
    CHECK(s == Rational(1));
  }
}

TEST_CASE("Fhat matrix") {
  const auto F = make_fhat();
  CHECK(F(1, 0) == Rational(-2));
  CHECK(F(0, 0) == Rational(1));
  CHECK(F(3, 1) == Rational(0));
  CHECK(F(4, 4) == q("5/8"));
}

TEST_CASE("E entries and composition") {
  const auto E = make_E(kLinear);
  CHECK(E(1, 0) == q("-1/2"));
  CHECK(E(1, 1) == q("1/4"));
  for (const auto& lam : {kLinear, kGeometric, LambdaSeq::linear(2, 3)}) {
    CHECK(make_E(lam).window(40) ==
          triangle_compose(make_lambda_matrix(lam), make_fhat()).window(40));
  }
}

TEST_CASE("E inverse closed form") {
  const auto G = make_E_inverse(kLinear);
  CHECK(G(0, 0) == Rational(1));
  CHECK(G(2, 0) == q("9/2"));
  CHECK(triangle_invert(make_E(kLinear), 32) == G.window(32));
  CHECK(triangle_invert(make_E(kGeometric), 32) == make_E_inverse(kGeometric).window(32));
  for (const auto& lam : {kLinear, kGeometric}) {
    CHECK(triangle_compose(make_E(lam), make_E_inverse(lam)).window(24).is_identity());
    CHECK(triangle_compose(make_E_inverse(lam), make_E(lam)).window(24).is_identity());
  }
}

TEST_CASE("compose with identity and invert identity") {
  const auto E = make_E(kLinear);
  CHECK(triangle_compose(Triangle::identity(), E).window(12) == E.window(12));
  CHECK(triangle_invert(Triangle::identity(), 10).is_identity());
}

TEST_CASE("Fhat inverse") {
  const auto inv = triangle_invert(make_fhat(), 24);
  for (std::size_t n = 0; n < 24; ++n) {
    for (std::size_t k = 0; k <= n; ++k) {
      CHECK(inv.at(n, k) == fib_q(n + 1) * fib_q(n + 1) / (fib_q(k) * fib_q(k + 1)));
      CHECK(inv.at(n, k).sign() > 0);
    }
  }
}

TEST_CASE("triangularity of every constructed triangle") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> idx(0, 60);
  const std::vector<Triangle> ts{make_lambda_matrix(kLinear), make_fhat(), make_E(kGeometric),
                                 make_E_inverse(kLinear),
                                 triangle_compose(make_E(kLinear), make_fhat())};
  for (int i = 0; i < 10000; ++i) {
    const std::size_t n = idx(rng);
    const std::size_t k = idx(rng);
    if (k <= n) continue;
    CHECK(ts[static_cast<std::size_t>(i) % ts.size()](n, k).is_zero());
  }
}

TEST_CASE("E applied to e0") {
  const auto y = triangle_apply(make_E(kLinear), gen_witness("unit:0", kLinear, std::nullopt, 20));
  CHECK(y[0] == Rational(1));
  for (std::size_t n = 1; n < 20; ++n) {
    CHECK(y[n] == (3 * kLinear.at(0) - 2 * kLinear.at(1)) / kLinear.at(static_cast<long>(n)));
    CHECK(y[n] == Rational(BigInt(-1), BigInt(n + 1)));
  }
}

TEST_CASE("forward transform matches the triangle") {
  std::mt19937_64 rng(17);
  for (const auto& lam : {kLinear, kGeometric}) {
    for (int t = 0; t < 20; ++t) {
      const auto x = random_window(rng, 32);
      CHECK(forward_transform(x, lam) == triangle_apply(make_E(lam), x));
    }
  }
  const auto t = gen_witness("t", kLinear, std::nullopt, 16);
  const auto y = forward_transform(t, kLinear);
  for (const auto& v : y.values()) CHECK(v == Rational(1));
}

TEST_CASE("inverse transform equals forward substitution") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    const auto& lam = t % 2 ? kLinear : kGeometric;
    const auto y = random_window(rng, 32);
    const auto x = inverse_transform(y, lam);
    CHECK(x == triangle_solve(make_E(lam), y));
    CHECK(forward_transform(x, lam) == y);
    CHECK(inverse_transform(forward_transform(y, lam), lam) == y);
  }
  CHECK(inverse_transform(SeqWindow::zeros(5), kLinear) == SeqWindow::zeros(5));
  const auto v = inverse_transform(gen_witness("unit:0", kLinear, std::nullopt, 8), kLinear);
  CHECK(v[0] == Rational(1));
  for (std::size_t n = 1; n < 8; ++n) CHECK(v[n] == fib_q(n + 1) * fib_q(n + 1) / Rational(2));
}

TEST_CASE("basis vectors") {
  const auto b0 = basis_vector(0, kLinear, 6);
  CHECK(b0[0] == Rational(1));
  const auto b3 = basis_vector(3, kLinear, 8);
  for (std::size_t n = 0; n < 3; ++n) CHECK(b3[n].is_zero());
  for (std::size_t k = 0; k < 24; ++k) {
    CHECK(forward_transform(basis_vector(k, kGeometric, 24), kGeometric) ==
          gen_witness("unit:" + std::to_string(k), kGeometric, std::nullopt, 24));
  }
  CHECK(code_of([] { basis_vector(4, kLinear, 4); }) == ErrorCode::kIndexOutOfRange);
}

TEST_CASE("basis reconstruction of t") {
  const std::size_t m = 24;
  const auto x = gen_witness("t", kLinear, std::nullopt, m + 1);
  const auto alpha = forward_transform(x, kLinear);
  std::vector<Rational> sum(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    const auto b = basis_vector(k, kLinear, m + 1);
    for (std::size_t n = 0; n <= m; ++n) sum[n] += alpha[k] * b[n];
  }
  CHECK(SeqWindow(sum) == x);
}

TEST_CASE("triangle errors") {
  DenseWindow d(3);
  d.set(0, 0, 1);
  d.set(1, 1, 0);
  d.set(2, 2, 1);
  const auto T = Triangle::from_dense(d);
  CHECK(code_of([&] { triangle_invert(T, 3); }) == ErrorCode::kSingularDiagonal);
  CHECK(code_of([&] { triangle_apply(T, SeqWindow::zeros(4)); }) == ErrorCode::kWindowMismatch);
  CHECK(triangle_apply(Triangle::from_dense(d, true), SeqWindow::zeros(5)).size() == 5);
  CHECK(code_of([] { SeqWindow(std::vector<Rational>{}); }) == ErrorCode::kWindowMismatch);
}
