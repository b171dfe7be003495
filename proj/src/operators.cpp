#include "fibla/operators.hpp"

#include "fibla/error.hpp"
#include "fibla/fibonacci.hpp"

namespace fibla {

namespace {

long idx(std::size_t n) { return static_cast<long>(n); }

// g_nk for k <= n.
Rational g_entry(const LambdaSeq& lambda, std::size_t n, std::size_t k) {
  const Rational f2 = fib_q(n + 1) * fib_q(n + 1);
  const Rational head = (lambda.diff(idx(k)) * fib_q(k) * fib_q(k + 1)).inverse();
  if (k == n) return lambda.at(idx(n)) * f2 * head;
  const Rational next = (lambda.diff(idx(k + 1)) * fib_q(k + 1) * fib_q(k + 2)).inverse();
  return lambda.at(idx(k)) * f2 * (head - next);
}

Provenance with_lambda(Provenance p, const LambdaSeq& lambda) {
  p.lambda = lambda.spec();
  return p;
}

}  // namespace

Rational diag_weight(const LambdaSeq& lambda, std::size_t k) { return g_entry(lambda, k, k); }

Rational kernel_bracket(const LambdaSeq& lambda, std::size_t k) {
  const Rational head = (lambda.diff(idx(k)) * fib_q(k) * fib_q(k + 1)).inverse();
  return head - (lambda.diff(idx(k + 1)) * fib_q(k + 1) * fib_q(k + 2)).inverse();
}

Triangle make_lambda_matrix(const LambdaSeq& lambda) {
  return Triangle(Triangle::Backing::kLambda, "Lambda(" + lambda.spec() + ")",
                  [lambda](std::size_t n, std::size_t k) {
                    return lambda.diff(idx(k)) / lambda.at(idx(n));
                  });
}

Triangle make_fhat() {
  return Triangle(Triangle::Backing::kFhat, "Fhat", [](std::size_t n, std::size_t k) {
    if (k == n) return Rational(fib(n), fib(n + 1));
    if (k + 1 == n) return -Rational(fib(n + 1), fib(n));
    return Rational(0);
  });
}

Triangle make_E(const LambdaSeq& lambda) {
  return Triangle(Triangle::Backing::kE, "E(" + lambda.spec() + ")",
                  [lambda](std::size_t n, std::size_t k) {
                    const Rational ln = lambda.at(idx(n));
                    if (k == n) return lambda.diff(idx(n)) * Rational(fib(n), fib(n + 1)) / ln;
                    const Rational a = lambda.diff(idx(k)) * Rational(fib(k), fib(k + 1));
                    const Rational b = lambda.diff(idx(k + 1)) * Rational(fib(k + 2), fib(k + 1));
                    return (a - b) / ln;
                  });
}

Triangle make_E_inverse(const LambdaSeq& lambda) {
  return Triangle(Triangle::Backing::kEInverse, "Einv(" + lambda.spec() + ")",
                  [lambda](std::size_t n, std::size_t k) { return g_entry(lambda, n, k); });
}

SeqWindow forward_transform(const SeqWindow& x, const LambdaSeq& lambda) {
  std::vector<Rational> y(x.size());
  Rational acc;
  for (std::size_t n = 0; n < x.size(); ++n) {
    Rational fh = Rational(fib(n), fib(n + 1)) * x[n];
    if (n > 0) fh -= Rational(fib(n + 1), fib(n)) * x[n - 1];
    acc += lambda.diff(idx(n)) * fh;
    y[n] = acc / lambda.at(idx(n));
  }
  return SeqWindow(std::move(y), with_lambda(x.provenance(), lambda));
}

RealWindow forward_transform(const RealWindow& x, const LambdaSeq& lambda) {
  const long prec = x[0].precision();
  std::vector<Real> y;
  y.reserve(x.size());
  Real acc = Real::exact(Rational(0), prec);
  for (std::size_t n = 0; n < x.size(); ++n) {
    const Rational d = lambda.diff(idx(n));
    acc = acc + Real::exact(d * Rational(fib(n), fib(n + 1)), prec) * x[n];
    if (n > 0) acc = acc - Real::exact(d * Rational(fib(n + 1), fib(n)), prec) * x[n - 1];
    y.push_back(Real::exact(lambda.at(idx(n)).inverse(), prec) * acc);
  }
  return RealWindow(std::move(y), x.provenance());
}

SeqWindow inverse_transform(const SeqWindow& y, const LambdaSeq& lambda) {
  std::vector<Rational> x(y.size());
  // The inner i-sum has the two terms i = j and i = j-1; accumulate over j.
  Rational acc;
  for (std::size_t k = 0; k < y.size(); ++k) {
    const long j = idx(k);
    const Rational num = lambda.at(j) * y[k] - lambda.at(j - 1) * y.at(j - 1);
    acc += num / (lambda.diff(j) * fib_q(k) * fib_q(k + 1));
    x[k] = fib_q(k + 1) * fib_q(k + 1) * acc;
  }
  return SeqWindow(std::move(x), with_lambda(y.provenance(), lambda));
}

RealWindow inverse_transform(const RealWindow& y, const LambdaSeq& lambda) {
  const long prec = y[0].precision();
  std::vector<Real> x;
  x.reserve(y.size());
  Real acc = Real::exact(Rational(0), prec);
  for (std::size_t k = 0; k < y.size(); ++k) {
    const long j = idx(k);
    const Rational w = (lambda.diff(j) * fib_q(k) * fib_q(k + 1)).inverse();
    acc = acc + Real::exact(lambda.at(j) * w, prec) * y[k];
    if (k > 0) acc = acc - Real::exact(lambda.at(j - 1) * w, prec) * y[k - 1];
    x.push_back(Real::exact(fib_q(k + 1) * fib_q(k + 1), prec) * acc);
  }
  return RealWindow(std::move(x), y.provenance());
}

SeqWindow basis_vector(std::size_t k, const LambdaSeq& lambda, std::size_t n) {
  if (k >= n) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "basis index " + std::to_string(k) + " outside window " + std::to_string(n));
  }
  std::vector<Rational> b(n);
  for (std::size_t i = k; i < n; ++i) b[i] = g_entry(lambda, i, k);
  return SeqWindow(std::move(b),
                   Provenance{"basis", lambda.spec(), std::nullopt, std::optional<std::size_t>(k)});
}

}  // namespace fibla
