#include "fibla/duals.hpp"

#include <algorithm>

#include "fibla/error.hpp"
#include "fibla/fibonacci.hpp"
#include "fibla/operators.hpp"

namespace fibla {

namespace {

long idx(std::size_t n) { return static_cast<long>(n); }

// Per-index coefficients shared by B, T and the conditions.
struct Kernel {
  std::vector<Rational> a;
  std::vector<Rational> prefix;  // P(m) = sum_{j<=m} f_{j+1}^2 a_j
  std::vector<Rational> g;       // g_kk
  std::vector<Rational> br;      // kernel_bracket(k)
  std::vector<Rational> lam;

  Kernel(const SeqWindow& w, const LambdaSeq& lambda) : a(w.values()) {
    Rational acc;
    for (std::size_t j = 0; j < a.size(); ++j) {
      acc += fib_q(j + 1) * fib_q(j + 1) * a[j];
      prefix.push_back(acc);
      g.push_back(diag_weight(lambda, j));
      br.push_back(kernel_bracket(lambda, j));
      lam.push_back(lambda.at(idx(j)));
    }
  }

  std::size_t size() const { return a.size(); }
  Rational abar(std::size_t k, std::size_t n) const {
    return a[k] * g[k] + lam[k] * br[k] * (prefix[n] - prefix[k]);
  }
  Rational diag(std::size_t n) const { return g[n] * a[n]; }
  // b_nk for k <= n.
  Rational b(std::size_t n, std::size_t k) const {
    if (k == n) return diag(n);
    return a[n] * lam[k] * fib_q(n + 1) * fib_q(n + 1) * br[k];
  }
};

Real qsum(const std::vector<Rational>& x, const Exponent& q, long prec) {
  if (q.is_infinite()) return window_norm(x, q, prec);
  return power_sum(x, q.value(), prec);
}

struct Evaluation {
  std::vector<SweepPoint> points;
  std::string value;
  bool lower_bound = false;
  bool decay = false;
};

Evaluation evaluate(const Kernel& K, std::string_view id, const Exponent& p,
                    const DualOptions& opts) {
  const std::size_t W = K.size();
  const auto sizes = default_sweep(4, W);
  const Exponent q = p.conjugate();
  Evaluation ev;
  auto push = [&](std::size_t n, const Real& v) {
    ev.points.push_back(SweepPoint::of(n, v));
    ev.value = v.to_string(25);
  };
  if (id == "d1") {
    for (std::size_t N : sizes) {
      std::vector<std::vector<Rational>> rows(N);
      for (std::size_t n = 0; n < N; ++n) {
        for (std::size_t k = 0; k <= n; ++k) rows[n].push_back(K.b(n, k));
      }
      const auto s = subset_sup(rows, q, opts.mode, opts.seed, opts.precision);
      ev.lower_bound = ev.lower_bound || !s.exhaustive;
      push(N, s.value);
    }
  } else if (id == "d2") {
    for (std::size_t N : sizes) {
      Rational best;
      for (std::size_t k = 0; k < N; ++k) {
        Rational col;
        for (std::size_t n = k; n < N; ++n) col += K.b(n, k).abs();
        best = max(best, col);
      }
      push(N, Real::exact(best, opts.precision));
    }
  } else if (id == "d3") {
    // Cauchy evidence: max_{N/2 <= m < N} |P(m) - P(N-1)| -> 0.
    ev.decay = true;
    for (std::size_t N : sizes) {
      Rational d;
      for (std::size_t m = N / 2; m < N; ++m) d = max(d, (K.prefix[m] - K.prefix[N - 1]).abs());
      push(N, Real::exact(d, opts.precision));
    }
    ev.value = K.prefix[W - 1].to_string();
  } else if (id == "d4" || id == "d8") {
    const Exponent e = id == "d4" ? q : Exponent(Rational(1));
    Real best = Real::exact(0, opts.precision);
    std::size_t done = 1;
    for (std::size_t N : sizes) {
      for (std::size_t n = done; n < N; ++n) {
        std::vector<Rational> row;
        for (std::size_t k = 0; k < n; ++k) row.push_back(K.abar(k, n));
        best = max(best, qsum(row, e, opts.precision));
      }
      done = N;
      push(N, best);
    }
  } else if (id == "d5") {
    Rational best;
    std::size_t done = 0;
    for (std::size_t N : sizes) {
      for (std::size_t n = done; n < N; ++n) best = max(best, K.diag(n).abs());
      done = N;
      push(N, Real::exact(best, opts.precision));
    }
  } else if (id == "d6") {
    Rational best;
    std::size_t done = 1;
    for (std::size_t N : sizes) {
      for (std::size_t n = done; n < N; ++n) {
        for (std::size_t k = 0; k < n; ++k) best = max(best, K.abar(k, n).abs());
      }
      done = N;
      push(N, Real::exact(best, opts.precision));
    }
  } else if (id == "d7") {
    // abar_k is taken at the largest window; sum_k |abar_k(n) - abar_k| with n = N - 1.
    ev.decay = true;
    const std::size_t top = W - 1;
    for (std::size_t N : sizes) {
      if (N >= W) break;
      const std::size_t n = N - 1;
      Rational s;
      for (std::size_t k = 0; k < top; ++k) {
        const Rational cur = k < n ? K.abar(k, n) : Rational(0);
        s += (cur - K.abar(k, top)).abs();
      }
      push(N, Real::exact(s, opts.precision));
    }
  } else {
    throw Error(ErrorCode::kUnknownCondition, "unknown dual condition '" + std::string(id) + "'");
  }
  return ev;
}

}  // namespace

Triangle alpha_matrix_B(const SeqWindow& a, const LambdaSeq& lambda) {
  auto K = std::make_shared<Kernel>(a, lambda);
  return Triangle(Triangle::Backing::kOracle, "B(" + lambda.spec() + ")",
                  [K](std::size_t n, std::size_t k) { return K->b(n, k); }, a.size());
}

Rational abar(const SeqWindow& a, const LambdaSeq& lambda, std::size_t k, std::size_t n) {
  if (k >= n || n >= a.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "abar needs k < n < len(a); got k=" +
                                                 std::to_string(k) + ", n=" + std::to_string(n) +
                                                 ", len=" + std::to_string(a.size()));
  }
  const Kernel K(a.prefix(n + 1), lambda);
  return K.abar(k, n);
}

Triangle beta_matrix_T(const SeqWindow& a, const LambdaSeq& lambda) {
  auto K = std::make_shared<Kernel>(a, lambda);
  return Triangle(Triangle::Backing::kOracle, "T(" + lambda.spec() + ")",
                  [K](std::size_t n, std::size_t k) { return k == n ? K->diag(n) : K->abar(k, n); },
                  a.size());
}

DualReport dual_condition(const SeqGenerator& a, const LambdaSeq& lambda, std::string_view id,
                          const Exponent& p, const DualOptions& opts) {
  static const std::vector<std::string_view> kIds = {"d1", "d2", "d3", "d4",
                                                     "d5", "d6", "d7", "d8"};
  if (std::find(kIds.begin(), kIds.end(), id) == kIds.end()) {
    throw Error(ErrorCode::kUnknownCondition, "unknown dual condition '" + std::string(id) + "'");
  }
  if (opts.window < 4) throw Error(ErrorCode::kDomain, "dual window must be at least 4");
  std::size_t W = opts.window;
  // Past the support every quantity is frozen, so one extra row decides it.
  if (a.support) W = std::max(W, *a.support + 2);
  const Kernel K(a.prefix(W), lambda);
  Evaluation ev = evaluate(K, id, p, opts);

  DualReport rep;
  rep.id = std::string(id);
  rep.lambda = lambda.spec();
  rep.p = p.to_string();
  rep.window = W;
  rep.mode = opts.mode;
  rep.value = ev.value;
  rep.lower_bound = ev.lower_bound;
  if (a.support) {
    rep.verdict = exact_verdict(std::move(ev.points), true,
                                "a finitely supported; quantity frozen past index " +
                                    std::to_string(*a.support));
  } else if (ev.decay) {
    rep.verdict = classify_decay(std::move(ev.points));
  } else {
    rep.verdict = classify_growth(std::move(ev.points));
  }
  return rep;
}

DualKind parse_dual_kind(std::string_view text) {
  if (text == "alpha") return DualKind::kAlpha;
  if (text == "beta") return DualKind::kBeta;
  if (text == "gamma") return DualKind::kGamma;
  throw Error(ErrorCode::kParse, "unknown dual kind '" + std::string(text) + "'");
}

std::string_view to_string(DualKind k) {
  switch (k) {
    case DualKind::kAlpha: return "alpha";
    case DualKind::kBeta: return "beta";
    case DualKind::kGamma: return "gamma";
  }
  return "beta";
}

std::vector<std::string> dual_conditions(const SpaceSpec& space, DualKind kind) {
  using K = SpaceSpec::Kind;
  if (!space.is_lp_family()) {
    throw Error(ErrorCode::kUnsupportedTarget, "duals are only known for l1, lp and linf domains");
  }
  switch (kind) {
    case DualKind::kAlpha:
      if (space.kind == K::kL1) return {"d2"};
      return {"d1"};
    case DualKind::kBeta:
      if (space.kind == K::kL1) return {"d3", "d5", "d6"};
      if (space.kind == K::kLp) return {"d3", "d4", "d5"};
      return {"d4", "d7", "d8"};
    case DualKind::kGamma:
      if (space.kind == K::kL1) return {"d5", "d6"};
      return {"d5", "d8"};
  }
  return {};
}

DualMembership dual_membership(const SeqGenerator& a, const LambdaSeq& lambda,
                               const SpaceSpec& space, DualKind kind, const DualOptions& opts) {
  DualMembership m;
  m.kind = kind;
  m.space = space;
  std::vector<Verdict> vs;
  for (const auto& id : dual_conditions(space, kind)) {
    m.parts.push_back(dual_condition(a, lambda, id, space.p, opts));
    vs.push_back(m.parts.back().verdict);
  }
  m.verdict = conjunction(vs);
  return m;
}

}  // namespace fibla
