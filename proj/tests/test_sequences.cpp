#include <cmath>
#include <fstream>

#include "doctest.h"
#include "fibla/error.hpp"
#include "fibla/fibonacci.hpp"
#include "fibla/lambda.hpp"
#include "fibla/operators.hpp"
#include "fibla/witness.hpp"

using namespace fibla;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

std::vector<Rational> qs(std::initializer_list<const char*> items) {
  std::vector<Rational> out;
  for (const char* s : items) out.push_back(q(s));
  return out;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kDomain;
}

const LambdaSeq kLinear = LambdaSeq::linear(1, 1);
const LambdaSeq kGeometric = LambdaSeq::geometric(2, 1);

}  // namespace

TEST_CASE("fibonacci indexing") {
  CHECK(fib(0) == 1);
  CHECK(fib(1) == 1);
  CHECK(fib(5) == 8);
  CHECK(fib(2) * fib(4) - fib(3) * fib(3) == 1);
}

TEST_CASE("cassini and ratio bounds") {
  for (std::size_t n = 1; n <= 200; ++n) {
    const BigInt lhs = fib(n - 1) * fib(n + 1) - fib(n) * fib(n);
    CHECK(lhs == (n % 2 == 1 ? 1 : -1));
  }
  for (std::size_t k = 0; k <= 200; ++k) {
    CHECK(Rational(fib(k), fib(k + 1)) <= Rational(1));
    CHECK(Rational(fib(k + 1), fib(k)) <= Rational(2));
  }
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(std::abs(Rational(fib(101), fib(100)).to_double() - phi) < 1e-12);
}

TEST_CASE("lambda families") {
  CHECK(kLinear.at(-1) == Rational(0));
  CHECK(kLinear.at(0) == Rational(1));
  CHECK(kLinear.at(4) == Rational(5));
  CHECK(kGeometric.at(3) == Rational(8));
  CHECK(kGeometric.reciprocal_summable());
  CHECK(!kLinear.reciprocal_summable());
  CHECK(kGeometric.reciprocal_tail(0) == Rational(2));
  CHECK(code_of([] { LambdaSeq::explicit_values(qs({"1", "1", "2"})); }) ==
        ErrorCode::kNotStrictlyIncreasing);
  CHECK(code_of([] { LambdaSeq::explicit_values(qs({"0", "1"})); }) == ErrorCode::kNonPositiveStart);
  CHECK(code_of([] { LambdaSeq::linear(0, 1); }) == ErrorCode::kNotStrictlyIncreasing);
  CHECK(code_of([] { LambdaSeq::geometric(2, -1); }) == ErrorCode::kNonPositiveStart);
  CHECK(code_of([] { LambdaSeq::parse("cubic:1"); }) == ErrorCode::kParse);
  CHECK(LambdaSeq::parse("linear:2,3").at(2) == Rational(7));
  CHECK(LambdaSeq::parse("geometric:3/2,1").at(2) == q("9/4"));
}

TEST_CASE("explicit lambda tails") {
  const auto lin = LambdaSeq::explicit_values(qs({"1", "3"}), TailRule::kLinear);
  CHECK(lin.at(4) == Rational(9));
  const auto geo = LambdaSeq::explicit_values(qs({"1", "2"}), TailRule::kGeometric, Rational(3));
  CHECK(geo.at(3) == Rational(18));
  CHECK(geo.reciprocal_tail(0) == Rational(1) + q("1/2") * q("3/2"));
  const auto none = LambdaSeq::explicit_values(qs({"1", "2"}));
  CHECK(code_of([&] { none.at(2); }) == ErrorCode::kLambdaOutOfRange);
}

TEST_CASE("lambda file") {
  const std::string path = "lambda_test_file.txt";
  {
    std::ofstream out(path);
    out << "# values\n1\n5/2\n4\ntail:geometric:2\n";
  }
  const auto lam = LambdaSeq::parse("file:" + path);
  CHECK(lam.at(1) == q("5/2"));
  CHECK(lam.at(4) == Rational(16));
  std::remove(path.c_str());
  CHECK(code_of([] { LambdaSeq::parse("file:/nonexistent/lambda"); }) == ErrorCode::kIo);
}

TEST_CASE("custom lambda is validated") {
  const auto sq = LambdaSeq::custom("squares", [](std::size_t n) {
    return Rational(static_cast<unsigned long>((n + 1) * (n + 1)));
  });
  CHECK(sq.at(2) == Rational(9));
  CHECK(code_of([] {
          LambdaSeq::custom("bad", [](std::size_t n) { return Rational(n < 3 ? 1 + static_cast<long>(n) : 1); });
        }) == ErrorCode::kNotStrictlyIncreasing);
}

TEST_CASE("witness windows") {
  CHECK(gen_witness("u", kLinear, std::nullopt, 4).values() == qs({"1", "6", "21/2", "175/6"}));
  CHECK(gen_witness("v-hilbert", kLinear, std::nullopt, 4).values() ==
        qs({"1", "-2", "-3/2", "-25/6"}));
  CHECK(gen_witness("t", kLinear, std::nullopt, 4).values() == qs({"1", "6", "15", "130/3"}));
  CHECK(gen_witness("v-e0", kLinear, std::nullopt, 5).values() ==
        qs({"1", "2", "9/2", "25/2", "32"}));
  CHECK(gen_witness("alternating", kLinear, std::nullopt, 4).values() ==
        qs({"1", "-2", "3", "-10/3"}));
  CHECK(gen_witness("unit:0", kLinear, std::nullopt, 4).values() == qs({"1", "0", "0", "0"}));
  CHECK(gen_witness("unit:9", kLinear, std::nullopt, 3).values() == qs({"0", "0", "0"}));
}

TEST_CASE("witness u agrees with the displayed value at index 2") {
  // f_3^2 (1 + 1/f_2) - lambda_1 f_3 / ((lambda_2 - lambda_1) f_2)
  const Rational f2 = fib_q(2);
  const Rational f3 = fib_q(3);
  const Rational closed = f3 * f3 * (Rational(1) + f2.inverse()) -
                          kLinear.at(1) * f3 / (kLinear.diff(2) * f2);
  CHECK(gen_witness("u", kLinear, std::nullopt, 3)[2] == closed);
}

TEST_CASE("witness t closed form and lambda independence") {
  const auto t_lin = gen_witness("t", kLinear, std::nullopt, 40);
  const auto t_geo = gen_witness("t", kGeometric, std::nullopt, 40);
  CHECK(t_lin == t_geo);
  Rational partial;
  for (std::size_t k = 0; k < 40; ++k) {
    if (k > 0) partial += (fib_q(k) * fib_q(k + 1)).inverse();
    CHECK(t_lin[k] == fib_q(k + 1) * fib_q(k + 1) * (partial + Rational(1)));
  }
}

TEST_CASE("witness E-images reproduce exactly") {
  for (const auto& lam : {kLinear, kGeometric, LambdaSeq::linear(2, 3)}) {
    for (const char* id : {"u", "v-hilbert", "t", "v-e0", "alternating", "unit:3"}) {
      const auto x = gen_witness(id, lam, std::nullopt, 24);
      CHECK(triangle_apply(make_E(lam), x) == witness_image(id, lam, std::nullopt, 24));
    }
  }
}

TEST_CASE("witness errors") {
  CHECK(code_of([] { gen_witness("w", kLinear, std::nullopt, 3); }) == ErrorCode::kUnknownWitness);
  CHECK(code_of([] { gen_witness("power-law", kLinear, std::nullopt, 3); }) ==
        ErrorCode::kMissingExponent);
  CHECK(code_of([] { gen_witness("power-law", kLinear, Exponent(Rational(2)), 3); }) ==
        ErrorCode::kRequiresRealMode);
  CHECK(gen_witness("power-law", kLinear, Exponent(Rational(1)), 3).size() == 3);
}

TEST_CASE("power-law witness in real mode") {
  const Exponent p(Rational(2));
  const auto x = gen_witness_real("power-law", kLinear, p, 65);
  const auto y = triangle_apply(make_E(kLinear), x);
  for (std::size_t n = 0; n < 65; ++n) {
    const Real target = pow_nonneg(Real::exact(Rational(BigInt(1), BigInt(n + 1))), q("1/2"));
    const Real diff = y[n] - target;
    CHECK(diff.contains(Rational(0)));
    CHECK(mpfr_cmp_d(diff.error_bound().get(), std::ldexp(1.0, -128)) <= 0);
  }
}

TEST_CASE("sequence specs") {
  CHECK(parse_sequence("zero", kLinear).prefix(3).values() == qs({"0", "0", "0"}));
  CHECK(parse_sequence("zero", kLinear).support == 0u);
  CHECK(parse_sequence("alt", kLinear).prefix(3).values() == qs({"1", "-1", "1"}));
  CHECK(parse_sequence("fibpow:-1", kLinear).prefix(4).values() == qs({"1", "1/2", "1/3", "1/5"}));
  CHECK(parse_sequence("fibpow:2", kLinear).prefix(3).values() == qs({"1", "4", "9"}));
  const auto v = parse_sequence("values:1,-1/2,0", kLinear);
  CHECK(v.support == 2u);
  CHECK(v.prefix(4).values() == qs({"1", "-1/2", "0", "0"}));
  CHECK(parse_sequence("witness:t", kLinear).prefix(3).values() == qs({"1", "6", "15"}));
  CHECK(parse_sequence("unit:2", kLinear).support == 3u);
  CHECK(code_of([] { parse_sequence("bogus", kLinear); }) == ErrorCode::kParse);
  CHECK(code_of([] { parse_sequence("witness:zz", kLinear); }) == ErrorCode::kUnknownWitness);
}
