#include "fibla/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fibla/error.hpp"
#include "fibla/operators.hpp"

namespace fibla {

namespace {

// log2 of sum 2^a_i without overflow.
double log2_sum(const std::vector<double>& logs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : logs) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double s = 0;
  for (double v : logs) s += std::exp2(v - m);
  return m + std::log2(s);
}

double tail_fraction(const std::vector<double>& log_abs, const Exponent& p) {
  const double e = p.value().to_double();
  std::vector<double> all, tail;
  const std::size_t start = log_abs.size() - std::max<std::size_t>(1, log_abs.size() / 4);
  for (std::size_t i = 0; i < log_abs.size(); ++i) {
    const double v = std::isfinite(log_abs[i]) ? e * log_abs[i] : log_abs[i];
    all.push_back(v);
    if (i >= start) tail.push_back(v);
  }
  const double la = log2_sum(all);
  if (!std::isfinite(la)) return 0.0;
  return std::clamp(std::exp2(log2_sum(tail) - la), 0.0, 1.0);
}

double log2_abs(const Real& r) { return SweepPoint::of(0, r).log2; }

Real rational_interval(const Rational& lo, const Rational& hi, long prec) {
  Mpfr a(prec);
  Mpfr b(prec);
  mpfr_set_q(a.get(), lo.get().get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(b.get(), hi.get().get_mpq_t(), MPFR_RNDU);
  return Real::from_bounds(std::move(a), std::move(b));
}

}  // namespace

SpaceSpec SpaceSpec::lp(const Exponent& p) {
  if (p.is_infinite()) return linf();
  if (p.is_one()) return l1();
  return {Kind::kLp, p};
}

SpaceSpec SpaceSpec::parse(std::string_view text) {
  if (text == "l1") return l1();
  if (text == "linf") return linf();
  if (text == "c0") return c0();
  if (text == "c") return c();
  if (text == "lp") throw Error(ErrorCode::kMissingExponent, "space lp needs an exponent, e.g. lp:2");
  if (text.starts_with("lp:")) return lp(Exponent::parse(text.substr(3)));
  throw Error(ErrorCode::kParse, "unknown space '" + std::string(text) + "'");
}

std::string SpaceSpec::to_string() const {
  switch (kind) {
    case Kind::kL1: return "l1";
    case Kind::kLp: return "lp:" + p.to_string();
    case Kind::kLinf: return "linf";
    case Kind::kC0: return "c0";
    case Kind::kC: return "c";
  }
  return "linf";
}

NormEstimate space_norm(const SeqWindow& x, const LambdaSeq& lambda, const Exponent& p,
                        long precision) {
  const SeqWindow y = forward_transform(x, lambda);
  NormEstimate est{window_norm(y.values(), p, precision), y.size(), 0.0, std::nullopt};
  if (p.is_infinite()) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < y.size(); ++i) {
      if (y[i].abs() > y[arg].abs()) arg = i;
    }
    est.sup_index = arg;
  } else {
    std::vector<double> logs;
    for (const auto& v : y.values()) logs.push_back(v.log2_abs());
    est.tail_fraction = tail_fraction(logs, p);
  }
  return est;
}

NormEstimate space_norm(const RealWindow& x, const LambdaSeq& lambda, const Exponent& p,
                        long precision) {
  const RealWindow y = forward_transform(x, lambda);
  NormEstimate est{window_norm(y.values(), p, precision), y.size(), 0.0, std::nullopt};
  std::vector<double> logs;
  for (const auto& v : y.values()) logs.push_back(log2_abs(v));
  if (p.is_infinite()) {
    est.sup_index = static_cast<std::size_t>(
        std::max_element(logs.begin(), logs.end()) - logs.begin());
  } else {
    est.tail_fraction = tail_fraction(logs, p);
  }
  return est;
}

ParallelogramReport parallelogram_check(const LambdaSeq& lambda, const Exponent& p,
                                        long precision) {
  constexpr std::size_t kN = 4;
  const SeqWindow u = gen_witness("u", lambda, std::nullopt, kN);
  const SeqWindow v = gen_witness("v-hilbert", lambda, std::nullopt, kN);
  std::vector<Rational> sum(kN), diff(kN);
  for (std::size_t i = 0; i < kN; ++i) {
    sum[i] = u[i] + v[i];
    diff[i] = u[i] - v[i];
  }
  // ||x||^2 computed as (sum |Ex|^p)^(2/p), which stays exact when it can.
  auto sq = [&](const SeqWindow& x) {
    const SeqWindow y = forward_transform(x, lambda);
    if (p.is_infinite()) {
      const Real m = window_norm(y.values(), p, precision);
      return m * m;
    }
    return pow_nonneg(power_sum(y.values(), p.value(), precision), Rational(2) / p.value());
  };
  ParallelogramReport r{Real::exact(0), Real::exact(0)};
  r.lhs = sq(SeqWindow(sum)) + sq(SeqWindow(diff));
  r.rhs = Real::exact(Rational(2), precision) * (sq(u) + sq(v));
  r.equal = overlaps(r.lhs, r.rhs);
  const Real gap = (r.lhs - r.rhs).abs();
  Mpfr err(precision);
  mpfr_add(err.get(), r.lhs.error_bound().get(), r.rhs.error_bound().get(), MPFR_RNDU);
  mpfr_mul_ui(err.get(), err.get(), 10, MPFR_RNDU);
  r.separated = mpfr_cmp(gap.lower().get(), err.get()) > 0;
  return r;
}

LambdaMReport lambda_M(const LambdaSeq& lambda, std::size_t K, double tol, long precision) {
  if (K < 2) throw Error(ErrorCode::kDomain, "lambda_M needs K >= 2");
  if (!lambda.reciprocal_summable() || !lambda.reciprocal_tail(0)) {
    throw Error(ErrorCode::kDivergentTail,
                "(1/lambda_n) not known to be summable for " + lambda.spec());
  }
  constexpr std::size_t kMaxTerms = 100000;
  LambdaMReport rep{Real::exact(0, precision), {}, {}, {}};
  std::vector<SweepPoint> sweep;
  for (std::size_t k = 0; k <= K; ++k) {
    const Rational d = lambda.diff(static_cast<long>(k));
    Rational partial;
    std::size_t n = k;
    Rational bound;
    while (true) {
      partial += lambda.at(static_cast<long>(n)).inverse();
      bound = d * *lambda.reciprocal_tail(n + 1);
      if (bound.to_double() < tol) break;
      if (++n - k > kMaxTerms) {
        throw Error(ErrorCode::kPrecisionExhausted, "tail bound did not reach tolerance");
      }
    }
    const Rational head = d * partial;
    Real tail = rational_interval(head, head + bound, precision);
    rep.value = k == 0 ? tail : max(rep.value, tail);
    sweep.push_back(SweepPoint::of(k + 1, rep.value));
    rep.tails.push_back(std::move(tail));
    rep.cutoff.push_back(n);
  }
  rep.verdict = classify_growth(std::move(sweep));
  return rep;
}

InclusionReport inclusion_bounds_check(const SeqWindow& x, const LambdaSeq& lambda,
                                       const Exponent& p, std::optional<Real> M) {
  InclusionReport rep;
  const SeqWindow y = forward_transform(x, lambda);
  for (const auto& v : y.values()) rep.linf_lhs = max(rep.linf_lhs, v.abs());
  Rational xm;
  for (const auto& v : x.values()) xm = max(xm, v.abs());
  rep.linf_rhs = Rational(4) * xm;
  rep.linf_holds = rep.linf_lhs <= rep.linf_rhs;
  if (p.is_infinite() || !lambda.reciprocal_summable()) return rep;
  if (!M) M = lambda_M(lambda, std::max<std::size_t>(x.size(), 2)).value;
  const Real lhs = window_norm(y.values(), p);
  const Real mp = pow_nonneg(*M, p.value().inverse());
  const Real rhs = Real::exact(4) * mp * window_norm(x.values(), p);
  rep.lp_holds = !certainly_less(rhs, lhs);
  rep.lp_lhs = lhs;
  rep.lp_rhs = rhs;
  return rep;
}

namespace {

// A finitely supported x decided without the sweep, if possible.
std::optional<Verdict> finite_support_verdict(const SeqGenerator& x, const LambdaSeq& lambda,
                                              const Exponent& p, std::vector<SweepPoint> sweep,
                                              long precision) {
  if (!x.support) return std::nullopt;
  const std::size_t s = *x.support;
  if (s == 0) return exact_verdict(std::move(sweep), true, "zero sequence");
  // For n > s, lambda_n (Ex)_n is constant, so |(Ex)_n| decreases from there on.
  const SeqWindow w = x.prefix(s + 2);
  const SeqWindow y = forward_transform(w, lambda);
  const Rational c = lambda.at(static_cast<long>(s + 1)) * y[s + 1];
  if (p.is_infinite()) {
    sweep.push_back(SweepPoint::of(s + 2, *window_norm(y.values(), p, precision).exact_value()));
    return exact_verdict(std::move(sweep), true, "sup attained inside the support");
  }
  if (c.is_zero()) return exact_verdict(std::move(sweep), true, "image finitely supported");
  if (lambda.reciprocal_summable()) {
    return exact_verdict(std::move(sweep), true, "image tail is c/lambda_n with 1/lambda in l1");
  }
  return std::nullopt;
}

}  // namespace

Verdict membership_evidence(const SeqGenerator& x, const LambdaSeq& lambda, const Exponent& p,
                            const std::vector<std::size_t>& sweep, long precision) {
  std::vector<SweepPoint> pts;
  for (std::size_t n : sweep) {
    const auto est = space_norm(x.prefix(n), lambda, p, precision);
    pts.push_back(SweepPoint::of(n, est.value));
  }
  if (auto v = finite_support_verdict(x, lambda, p, pts, precision)) return *v;
  return classify_growth(std::move(pts));
}

Verdict membership_evidence_real(const std::function<RealWindow(std::size_t, long)>& x,
                                 const LambdaSeq& lambda, const Exponent& p,
                                 const std::vector<std::size_t>& sweep, long precision) {
  std::vector<SweepPoint> pts;
  for (std::size_t n : sweep) {
    const long prec = witness_precision(n, precision);
    const auto est = space_norm(x(n, prec), lambda, p, prec);
    pts.push_back(SweepPoint::of(n, est.value));
  }
  return classify_growth(std::move(pts));
}

long witness_precision(std::size_t n, long base) {
  return base + 2 * static_cast<long>(n) + 64;
}

}  // namespace fibla
