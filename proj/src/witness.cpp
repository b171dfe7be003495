#include "fibla/witness.hpp"

#include <charconv>

#include "fibla/error.hpp"
#include "fibla/fibonacci.hpp"
#include "fibla/operators.hpp"
#include "fibla/triangle.hpp"

namespace fibla {

namespace {

std::optional<std::size_t> parse_unit(std::string_view id) {
  if (id.rfind("unit:", 0) != 0) return std::nullopt;
  const auto digits = id.substr(5);
  std::size_t k = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw Error(ErrorCode::kParse, "bad unit index in '" + std::string(id) + "'");
  }
  return k;
}

SeqWindow unit_vector(std::size_t k, std::size_t n) {
  std::vector<Rational> v(n);
  if (k < n) v[k] = Rational(1);
  return SeqWindow(std::move(v), Provenance{"unit", "", std::nullopt, k});
}

Provenance witness_provenance(std::string_view id, const LambdaSeq& lambda,
                              const std::optional<Exponent>& p) {
  Provenance prov{"witness:" + std::string(id), lambda.spec(), std::nullopt, std::nullopt};
  if (p) prov.p = p->to_string();
  return prov;
}

void check_length(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kWindowMismatch, "witness length must be >= 1");
}

bool is_known(std::string_view id) {
  return id == "u" || id == "v-hilbert" || id == "t" || id == "v-e0" || id == "power-law" ||
         id == "alternating";
}

}  // namespace

SeqWindow witness_image(std::string_view id, const LambdaSeq& lambda,
                        const std::optional<Exponent>& p, std::size_t n) {
  check_length(n);
  if (auto k = parse_unit(id)) {
    return forward_transform(unit_vector(*k, n), lambda);
  }
  std::vector<Rational> y(n);
  if (id == "u" || id == "v-hilbert") {
    y[0] = Rational(1);
    if (n > 1) y[1] = Rational(id == "u" ? 1 : -1);
  } else if (id == "t") {
    for (auto& v : y) v = Rational(1);
  } else if (id == "v-e0") {
    y[0] = Rational(1);
  } else if (id == "alternating") {
    for (std::size_t i = 0; i < n; ++i) y[i] = Rational(i % 2 == 0 ? 1 : -1);
  } else if (id == "power-law") {
    if (!p) throw Error(ErrorCode::kMissingExponent, "witness power-law needs p");
    if (p->is_infinite()) {
      for (auto& v : y) v = Rational(1);
    } else if (p->is_one()) {
      for (std::size_t i = 0; i < n; ++i) y[i] = Rational(BigInt(1), BigInt(static_cast<unsigned long>(i + 1)));
    } else {
      throw Error(ErrorCode::kRequiresRealMode,
                  "(n+1)^(-1/" + p->to_string() + ") is irrational; use real mode");
    }
  } else {
    throw Error(ErrorCode::kUnknownWitness, "unknown witness '" + std::string(id) + "'");
  }
  return SeqWindow(std::move(y), witness_provenance(id, lambda, p));
}

RealWindow witness_image_real(std::string_view id, const LambdaSeq& lambda,
                              const std::optional<Exponent>& p, std::size_t n, long precision) {
  check_length(n);
  if (id != "power-law" || (p && (p->is_infinite() || p->is_one()))) {
    return RealWindow::from_exact(witness_image(id, lambda, p, n), precision);
  }
  if (!p) throw Error(ErrorCode::kMissingExponent, "witness power-law needs p");
  const Rational e = p->value().inverse();
  std::vector<Real> y;
  y.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational base(BigInt(1), BigInt(static_cast<unsigned long>(i + 1)));
    y.push_back(pow_nonneg(Real::exact(base, precision), e));
  }
  return RealWindow(std::move(y), witness_provenance(id, lambda, p));
}

SeqWindow gen_witness(std::string_view id, const LambdaSeq& lambda,
                      const std::optional<Exponent>& p, std::size_t n) {
  check_length(n);
  if (auto k = parse_unit(id)) return unit_vector(*k, n);
  if (!is_known(id)) {
    throw Error(ErrorCode::kUnknownWitness, "unknown witness '" + std::string(id) + "'");
  }
  SeqWindow x = inverse_transform(witness_image(id, lambda, p, n), lambda);
  x.set_provenance(witness_provenance(id, lambda, p));
  return x;
}

RealWindow gen_witness_real(std::string_view id, const LambdaSeq& lambda,
                            const std::optional<Exponent>& p, std::size_t n, long precision) {
  check_length(n);
  if (parse_unit(id)) return RealWindow::from_exact(gen_witness(id, lambda, p, n), precision);
  if (!is_known(id)) {
    throw Error(ErrorCode::kUnknownWitness, "unknown witness '" + std::string(id) + "'");
  }
  return inverse_transform(witness_image_real(id, lambda, p, n, precision), lambda);
}

SeqGenerator parse_sequence(std::string_view spec, const LambdaSeq& lambda,
                            const std::optional<Exponent>& p) {
  const std::string name(spec);
  auto fill = [name](std::function<Rational(std::size_t)> f) {
    return [name, f](std::size_t n) {
      check_length(n);
      std::vector<Rational> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = f(i);
      return SeqWindow(std::move(v), Provenance{name, "", std::nullopt, std::nullopt});
    };
  };
  if (spec == "zero") return {name, fill([](std::size_t) { return Rational(0); }), 0};
  if (spec == "ones") return {name, fill([](std::size_t) { return Rational(1); }), std::nullopt};
  if (spec == "alt") {
    return {name, fill([](std::size_t i) { return Rational(i % 2 == 0 ? 1 : -1); }), std::nullopt};
  }
  if (auto k = parse_unit(spec)) {
    const std::size_t kk = *k;
    return {name, fill([kk](std::size_t i) { return Rational(i == kk ? 1 : 0); }), kk + 1};
  }
  if (spec.rfind("fibpow:", 0) == 0) {
    const std::string arg(spec.substr(7));
    long m = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), m);
    if (arg.empty() || ec != std::errc() || ptr != arg.data() + arg.size()) {
      throw Error(ErrorCode::kParse, "bad fibpow exponent '" + arg + "'");
    }
    return {name,
            fill([m](std::size_t i) {
              const Rational f = fib_q(i + 1).pow(static_cast<unsigned long>(m < 0 ? -m : m));
              return m < 0 ? f.inverse() : f;
            }),
            std::nullopt};
  }
  if (spec.rfind("values:", 0) == 0 || spec.rfind("file:", 0) == 0) {
    std::vector<Rational> vals;
    if (spec[0] == 'v') {
      std::string rest(spec.substr(7));
      std::size_t start = 0;
      while (start <= rest.size()) {
        const auto comma = rest.find(',', start);
        const auto piece = rest.substr(start, comma == std::string::npos ? comma : comma - start);
        vals.push_back(Rational::parse(piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    } else {
      vals = read_window_file(std::string(spec.substr(5))).values();
    }
    std::size_t support = vals.size();
    while (support > 0 && vals[support - 1].is_zero()) --support;
    return {name,
            fill([vals](std::size_t i) { return i < vals.size() ? vals[i] : Rational(0); }),
            support};
  }
  if (spec.rfind("witness:", 0) == 0) {
    const std::string id(spec.substr(8));
    std::optional<std::size_t> support;
    if (auto k = parse_unit(id)) support = *k + 1;
    else if (!is_known(id)) throw Error(ErrorCode::kUnknownWitness, "unknown witness '" + id + "'");
    return {name, [id, lambda, p](std::size_t n) { return gen_witness(id, lambda, p, n); }, support};
  }
  throw Error(ErrorCode::kParse, "unknown sequence spec '" + name + "'");
}

}  // namespace fibla
