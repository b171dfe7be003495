#include "fibla/matclass.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "fibla/duals.hpp"
#include "fibla/error.hpp"
#include "fibla/fibonacci.hpp"
#include "fibla/operators.hpp"

namespace fibla {

namespace {

long idx(std::size_t n) { return static_cast<long>(n); }

Rational fib_sq(std::size_t j) { return fib_q(j + 1) * fib_q(j + 1); }

}  // namespace

// ---------------------------------------------------------------- HatMatrix

struct HatMatrix::Row {
  std::vector<Rational> e;
  bool exact = true;
  Verdict series;
};

struct HatMatrix::Cache {
  std::shared_mutex mu;
  std::unordered_map<std::size_t, std::unique_ptr<Row>> rows;
};

HatMatrix::HatMatrix(Matrix a, LambdaSeq lambda, std::size_t m_max)
    : a_(std::move(a)), lambda_(std::move(lambda)), m_max_(std::max<std::size_t>(m_max, 8)),
      cache_(std::make_shared<Cache>()) {}

const HatMatrix::Row& HatMatrix::get(std::size_t n) const {
  {
    std::shared_lock lock(cache_->mu);
    if (auto it = cache_->rows.find(n); it != cache_->rows.end()) return *it->second;
  }
  auto row = std::make_unique<Row>();
  const auto sup = a_.row_support(n);
  const std::size_t M = sup.value_or(m_max_);
  std::vector<Rational> a = a_.row(n, M);
  std::vector<Rational> Q(M);
  Rational acc;
  for (std::size_t j = 0; j < M; ++j) {
    acc += fib_sq(j) * a[j];
    Q[j] = acc;
  }
  if (sup) {
    row->series = exact_verdict({}, true, "finitely supported row");
  } else {
    row->exact = false;
    std::vector<SweepPoint> pts;
    for (std::size_t N : default_sweep(8, M)) {
      Rational d;
      for (std::size_t m = N / 2; m < N; ++m) d = max(d, (Q[m] - Q[N - 1]).abs());
      pts.push_back(SweepPoint::of(N, d));
    }
    row->series = classify_decay(std::move(pts));
  }
  row->e.reserve(M);
  for (std::size_t k = 0; k < M; ++k) {
    Rational v = a[k] * diag_weight(lambda_, k);
    if (k + 1 < M) v += lambda_.at(idx(k)) * kernel_bracket(lambda_, k) * (Q[M - 1] - Q[k]);
    row->e.push_back(std::move(v));
  }
  std::unique_lock lock(cache_->mu);
  auto [it, inserted] = cache_->rows.emplace(n, std::move(row));
  return *it->second;
}

Rational HatMatrix::partial(std::size_t n, std::size_t k, std::size_t m) const {
  if (k >= m) {
    throw Error(ErrorCode::kIndexOutOfRange, "partial hat entry needs k < m; got k=" +
                                                 std::to_string(k) + ", m=" + std::to_string(m));
  }
  const auto sup = a_.row_support(n);
  const std::size_t top = sup ? std::min(m, *sup == 0 ? 0 : *sup - 1) : m;
  Rational s;
  for (std::size_t j = k + 1; j <= top; ++j) s += fib_sq(j) * a_.entry(n, j);
  return a_.entry(n, k) * diag_weight(lambda_, k) + lambda_.at(idx(k)) * kernel_bracket(lambda_, k) * s;
}

const std::vector<Rational>& HatMatrix::row(std::size_t n) const {
  const Row& r = get(n);
  if (r.series.status == Status::kEvidenceDiverging) {
    throw Error(ErrorCode::kRowSeriesDivergent,
                "sum_j f_{j+1}^2 a_nj diverges for row " + std::to_string(n) + " of " + a_.description());
  }
  return r.e;
}

Rational HatMatrix::entry(std::size_t n, std::size_t k) const {
  const auto& e = row(n);
  return k < e.size() ? e[k] : Rational(0);
}

std::size_t HatMatrix::support(std::size_t n) const { return get(n).e.size(); }
bool HatMatrix::exact_row(std::size_t n) const { return get(n).exact; }
const Verdict& HatMatrix::row_series(std::size_t n) const { return get(n).series; }

Rational ehat_pairing(const Matrix& a, const LambdaSeq& lambda, std::size_t n, std::size_t k) {
  const auto sup = a.row_support(n);
  if (!sup) throw Error(ErrorCode::kDomain, "ehat_pairing needs a finitely supported row");
  const Triangle g = make_E_inverse(lambda);
  Rational s;
  for (std::size_t j = k; j < *sup; ++j) s += a.entry(n, j) * g.entry(j, k);
  return s;
}

// ---------------------------------------------------------------- classes

namespace {

struct Evaluation {
  std::vector<SweepPoint> points;
  std::string value;
  bool lower_bound = false;
  bool decay = false;
  /// Already decided (per-row or per-column conjunctions).
  std::optional<Verdict> verdict;
  /// Certified quantity at the largest window.
  std::optional<Real> last;
};

Real norm_of(const std::vector<Rational>& row, const Exponent& q, long prec) {
  if (row.empty()) return Real::exact(0, prec);
  return window_norm(row, q, prec);
}

Real power_of(const std::vector<Rational>& v, const Exponent& p, long prec) {
  if (v.empty()) return Real::exact(0, prec);
  if (p.is_infinite()) return window_norm(v, p, prec);
  return power_sum(v, p.value(), prec);
}

struct Ctx {
  const HatMatrix& H;
  const Matrix& A;
  const LambdaSeq& lambda;
  SpaceSpec X;
  SpaceSpec Y;
  const ClassOptions& opts;
  std::size_t W;
  std::vector<std::size_t> sizes;
  long prec() const { return opts.precision; }
  Exponent q() const { return X.p.conjugate(); }
};

// Sweep of max_{n<N} rho(n) for a per-row quantity rho.
Evaluation row_sup(const Ctx& c, const std::function<Real(std::size_t)>& rho) {
  Evaluation ev;
  Real best = Real::exact(0, c.prec());
  std::size_t done = 0;
  for (std::size_t N : c.sizes) {
    for (std::size_t n = done; n < N; ++n) best = max(best, rho(n));
    done = N;
    ev.points.push_back(SweepPoint::of(N, best));
    ev.value = best.to_string(25);
    ev.last = best;
  }
  return ev;
}

std::size_t width(const Ctx& c, std::size_t N) {
  std::size_t w = 0;
  for (std::size_t n = 0; n < N; ++n) w = std::max(w, c.H.support(n));
  return w;
}

std::vector<Rational> column(const Ctx& c, std::size_t k, std::size_t N) {
  std::vector<Rational> col;
  for (std::size_t n = 0; n < N; ++n) col.push_back(c.H.entry(n, k));
  return col;
}

// Sweep of max_k sum_{n<N} |ehat_nk|^e.
Evaluation column_sup(const Ctx& c, const Exponent& e) {
  Evaluation ev;
  for (std::size_t N : c.sizes) {
    Real best = Real::exact(0, c.prec());
    for (std::size_t k = 0; k < width(c, N); ++k) best = max(best, power_of(column(c, k, N), e, c.prec()));
    ev.points.push_back(SweepPoint::of(N, best));
    ev.value = best.to_string(25);
    ev.last = best;
  }
  return ev;
}

Evaluation subset_rows(const Ctx& c, const Exponent& e) {
  Evaluation ev;
  for (std::size_t N : c.sizes) {
    std::vector<std::vector<Rational>> rows;
    for (std::size_t n = 0; n < N; ++n) rows.push_back(c.H.row(n));
    const auto s = subset_sup(rows, e, c.opts.mode, c.opts.seed, c.prec());
    ev.lower_bound = ev.lower_bound || !s.exhaustive;
    ev.points.push_back(SweepPoint::of(N, s.value));
    ev.value = s.value.to_string(25);
    ev.last = s.value;
  }
  return ev;
}

std::size_t probe_columns(const Ctx& c) { return std::max<std::size_t>(1, c.W / 4); }

// Per-column decay sweeps, combined by conjunction.
Evaluation per_column_decay(const Ctx& c, const std::function<Rational(std::size_t k, std::size_t N)>& f) {
  Evaluation ev;
  ev.decay = true;
  std::vector<Verdict> parts;
  Rational worst;
  for (std::size_t k = 0; k < probe_columns(c); ++k) {
    std::vector<SweepPoint> pts;
    for (std::size_t N : c.sizes) pts.push_back(SweepPoint::of(N, f(k, N)));
    if (!pts.empty() && pts.back().value >= worst.to_double()) ev.points = pts;
    parts.push_back(classify_decay(std::move(pts)));
  }
  Verdict v = conjunction(parts);
  v.sweep = ev.points;
  v.note += " (columns k < " + std::to_string(probe_columns(c)) + ")";
  ev.value = ev.points.empty() ? "0" : ev.points.back().text;
  ev.verdict = v;
  return ev;
}

Evaluation structural_rows(const std::string& what,
                           const std::function<Verdict(std::size_t)>& per_row, std::size_t rows) {
  Evaluation ev;
  std::vector<Verdict> parts;
  for (std::size_t n = 0; n < rows; ++n) parts.push_back(per_row(n));
  Verdict v = conjunction(parts);
  v.note = what + " over rows n < " + std::to_string(rows);
  ev.value = std::string(to_string(v.status));
  ev.verdict = v;
  return ev;
}

SeqGenerator row_generator(const Matrix& A, std::size_t n) {
  return SeqGenerator{"row " + std::to_string(n) + " of " + A.description(),
                      [A, n](std::size_t N) { return SeqWindow(A.row(n, N)); }, A.row_support(n)};
}

const std::map<std::string, std::string>& descriptions() {
  static const std::map<std::string, std::string> d = {
      {"row-series", "sum_{j>k} a_nj f_{j+1}^2 exists for each n, k"},
      {"diag-bounded", "(g_kk a_nk)_k bounded for each n"},
      {"row-q-norms", "sup_n ||Ehat_n||_q finite"},
      {"rows-in-beta-dual", "each row of A in the beta-dual (d3, d4, d5)"},
      {"entries-bounded", "sup_{n,k} |ehat_nk| finite"},
      {"row-l1-norms", "sup_n sum_k |ehat_nk| finite"},
      {"partial-uniform", "sum_n |ehat_nk(m) - ehat_nk| -> 0 as m grows, each k"},
      {"column-limits", "lim_n ehat_nk exists for each k"},
      {"row-limit-l1", "sum_k |ehat_nk - alpha_k| -> 0"},
      {"columns-to-zero", "lim_n ehat_nk = 0 for each k"},
      {"rows-to-zero", "sum_k |ehat_nk| -> 0"},
      {"column-l1-sums", "sup_k sum_n |ehat_nk| finite"},
      {"subset-q", "sup_F sum_k |sum_{n in F} ehat_nk|^q finite"},
      {"subset-l1", "sup_F sum_k |sum_{n in F} ehat_nk| finite"},
      {"column-p-sums", "sup_k sum_n |ehat_nk|^p finite"},
      {"row-abs-convergent", "sum_k |ehat_nk| converges for each n"},
      {"column-subset-p", "sup_K sum_n |sum_{k in K} ehat_nk|^p finite"},
  };
  return d;
}

Evaluation evaluate(const Ctx& c, const std::string& id) {
  const Matrix& A = c.A;
  const bool rows_finite = A.shape().rows_finite;
  if (id == "row-series" || id == "row-abs-convergent" || id == "rows-in-beta-dual") {
    if (rows_finite) {
      Evaluation ev;
      ev.value = "every row finitely supported";
      return ev;
    }
    if (id == "row-series") {
      return structural_rows("row series convergence", [&](std::size_t n) { return c.H.row_series(n); }, c.W);
    }
  }
  if (id == "diag-bounded") {
    if (rows_finite) {
      Evaluation ev = row_sup(c, [&](std::size_t n) {
        Rational m;
        const auto sup = *A.row_support(n);
        for (std::size_t k = 0; k < sup; ++k) m = max(m, (diag_weight(c.lambda, k) * A.entry(n, k)).abs());
        return Real::exact(m, c.prec());
      });
      return ev;
    }
    return structural_rows("scaled diagonal bounded", [&](std::size_t n) {
      std::vector<SweepPoint> pts;
      Rational m;
      std::size_t done = 0;
      for (std::size_t K : default_sweep(8, 256)) {
        for (std::size_t k = done; k < K; ++k) m = max(m, (diag_weight(c.lambda, k) * A.entry(n, k)).abs());
        done = K;
        pts.push_back(SweepPoint::of(K, m));
      }
      return classify_growth(std::move(pts));
    }, std::min<std::size_t>(c.W, 8));
  }
  if (id == "row-abs-convergent") {
    return structural_rows("row absolute convergence", [&](std::size_t n) {
      std::vector<SweepPoint> pts;
      const auto& e = c.H.row(n);
      Rational s;
      std::size_t done = 0;
      for (std::size_t K : default_sweep(8, e.size())) {
        for (std::size_t k = done; k < K; ++k) s += e[k].abs();
        done = K;
        pts.push_back(SweepPoint::of(K, s));
      }
      return classify_growth(std::move(pts));
    }, std::min<std::size_t>(c.W, 8));
  }
  if (id == "rows-in-beta-dual") {
    DualOptions dopts;
    dopts.window = 16;
    dopts.mode = c.opts.mode;
    dopts.seed = c.opts.seed;
    dopts.precision = c.opts.precision;
    return structural_rows("beta-dual membership", [&](std::size_t n) {
      return dual_membership(row_generator(A, n), c.lambda, c.X, DualKind::kBeta, dopts).verdict;
    }, std::min<std::size_t>(c.W, 8));
  }
  if (id == "row-q-norms") {
    return row_sup(c, [&](std::size_t n) { return norm_of(c.H.row(n), c.q(), c.prec()); });
  }
  if (id == "entries-bounded") {
    return row_sup(c, [&](std::size_t n) { return norm_of(c.H.row(n), Exponent::infinity(), c.prec()); });
  }
  if (id == "row-l1-norms") {
    return row_sup(c, [&](std::size_t n) { return norm_of(c.H.row(n), Exponent(Rational(1)), c.prec()); });
  }
  if (id == "partial-uniform") {
    return per_column_decay(c, [&](std::size_t k, std::size_t N) {
      const std::size_t m = std::max(N / 2, k + 1);
      Rational s;
      for (std::size_t n = 0; n < N; ++n) s += (c.H.partial(n, k, m) - c.H.entry(n, k)).abs();
      return s;
    });
  }
  if (id == "column-limits") {
    return per_column_decay(c, [&](std::size_t k, std::size_t N) {
      Rational d;
      const Rational last = c.H.entry(N - 1, k);
      for (std::size_t n = N / 2; n < N; ++n) d = max(d, (c.H.entry(n, k) - last).abs());
      return d;
    });
  }
  if (id == "columns-to-zero") {
    return per_column_decay(c, [&](std::size_t k, std::size_t N) {
      Rational d;
      for (std::size_t n = N / 2; n < N; ++n) d = max(d, c.H.entry(n, k).abs());
      return d;
    });
  }
  if (id == "rows-to-zero") {
    Evaluation ev;
    ev.decay = true;
    for (std::size_t N : c.sizes) {
      Rational d;
      for (std::size_t n = N / 2; n < N; ++n) {
        Rational s;
        for (const auto& v : c.H.row(n)) s += v.abs();
        d = max(d, s);
      }
      ev.points.push_back(SweepPoint::of(N, d));
      ev.value = d.to_string();
    }
    return ev;
  }
  if (id == "row-limit-l1") {
    // alpha_k taken from the last row of the window.
    Evaluation ev;
    ev.decay = true;
    const std::size_t top = c.W - 1;
    for (std::size_t N : c.sizes) {
      if (N > top) break;
      const std::size_t w = std::max(c.H.support(N - 1), c.H.support(top));
      Rational s;
      for (std::size_t k = 0; k < w; ++k) s += (c.H.entry(N - 1, k) - c.H.entry(top, k)).abs();
      ev.points.push_back(SweepPoint::of(N, s));
      ev.value = s.to_string();
    }
    return ev;
  }
  if (id == "column-l1-sums") return column_sup(c, Exponent(Rational(1)));
  if (id == "column-p-sums") return column_sup(c, c.Y.p);
  if (id == "subset-q") return subset_rows(c, c.q());
  if (id == "subset-l1") return subset_rows(c, Exponent(Rational(1)));
  if (id == "column-subset-p") {
    Evaluation ev;
    for (std::size_t N : c.sizes) {
      std::vector<std::vector<Rational>> cols;
      for (std::size_t k = 0; k < width(c, N); ++k) cols.push_back(column(c, k, N));
      const auto s = subset_sup(cols, c.Y.p, c.opts.mode, c.opts.seed, c.prec());
      ev.lower_bound = ev.lower_bound || !s.exhaustive;
      ev.points.push_back(SweepPoint::of(N, s.value));
      ev.value = s.value.to_string(25);
    }
    return ev;
  }
  throw Error(ErrorCode::kUnknownCondition, "unknown class condition '" + id + "'");
}

std::size_t row_window(const Matrix& A, std::size_t window) {
  if (window < 4) throw Error(ErrorCode::kDomain, "window must be at least 4");
  std::size_t W = window;
  if (A.finite()) W = std::max(W, *A.shape().nonzero_rows);
  if (A.shape().rows) {
    if (*A.shape().rows < 4) throw Error(ErrorCode::kWindowMismatch, "matrix has fewer than 4 rows");
    W = std::min(W, *A.shape().rows);
  }
  return W;
}

}  // namespace

std::vector<std::string> class_conditions(const SpaceSpec& X, const SpaceSpec& Y) {
  using K = SpaceSpec::Kind;
  if (!X.is_lp_family()) {
    throw Error(ErrorCode::kUnsupportedPair, "domain must be l1, lp or linf, got " + X.to_string());
  }
  const std::vector<std::string> base = {"row-series", "diag-bounded"};
  const std::vector<std::string> lp_base = {"row-series", "diag-bounded", "row-q-norms", "rows-in-beta-dual"};
  auto with = [](std::vector<std::string> v, std::initializer_list<const char*> more) {
    for (const char* m : more) v.emplace_back(m);
    return v;
  };
  switch (Y.kind) {
    case K::kLinf:
      if (X.kind == K::kL1) return with(base, {"entries-bounded"});
      if (X.kind == K::kLp) return lp_base;
      return with(base, {"row-l1-norms", "partial-uniform"});
    case K::kC:
      if (X.kind == K::kL1) return with(base, {"column-limits"});
      if (X.kind == K::kLp) return with(lp_base, {"column-limits"});
      return with(base, {"partial-uniform", "row-limit-l1"});
    case K::kC0:
      if (X.kind == K::kL1) return with(base, {"columns-to-zero"});
      if (X.kind == K::kLp) return with(lp_base, {"columns-to-zero"});
      return with(base, {"partial-uniform", "rows-to-zero"});
    case K::kL1:
      if (X.kind == K::kL1) return with(base, {"entries-bounded", "column-l1-sums"});
      if (X.kind == K::kLp) return with(lp_base, {"subset-q"});
      return with(base, {"partial-uniform", "subset-l1"});
    case K::kLp:
      if (X.kind == K::kL1) return with(base, {"column-p-sums"});
      if (X.kind == K::kLinf) return with(base, {"row-abs-convergent", "column-subset-p"});
      break;
  }
  throw Error(ErrorCode::kUnsupportedPair,
              "no characterization for (" + X.to_string() + " : " + Y.to_string() + ")");
}

ClassReport class_check(const Matrix& a, const LambdaSeq& lambda, const SpaceSpec& X,
                        const SpaceSpec& Y, const ClassOptions& opts) {
  const auto ids = class_conditions(X, Y);
  const std::size_t W = row_window(a, opts.window);
  const HatMatrix H(a, lambda);
  const Ctx c{H, a, lambda, X, Y, opts, W, default_sweep(4, W)};
  ClassReport rep;
  rep.X = X;
  rep.Y = Y;
  rep.window = W;
  std::vector<Verdict> parts;
  for (const auto& id : ids) {
    Evaluation ev = evaluate(c, id);
    ConditionResult r;
    r.id = id;
    r.description = descriptions().at(id);
    r.value = ev.value;
    r.lower_bound = ev.lower_bound;
    const bool structural = a.shape().rows_finite &&
                            (id == "row-series" || id == "diag-bounded" ||
                             id == "row-abs-convergent" || id == "rows-in-beta-dual");
    if (a.finite() || structural) {
      r.verdict = exact_verdict(std::move(ev.points), true,
                                a.finite() ? "finitely many nonzero rows, each finitely supported"
                                           : "every row finitely supported");
    } else if (ev.verdict) {
      r.verdict = *ev.verdict;
    } else {
      r.verdict = ev.decay ? classify_decay(std::move(ev.points)) : classify_growth(std::move(ev.points));
    }
    parts.push_back(r.verdict);
    rep.conditions.push_back(std::move(r));
  }
  rep.verdict = conjunction(parts);
  return rep;
}

Matrix corollary_C(const Matrix& a, const LambdaSeq& lambda, const std::optional<LambdaSeq>& lambda2) {
  const LambdaSeq lam = lambda2.value_or(lambda);
  Matrix::Shape shape;
  shape.rows = a.shape().rows;
  shape.rows_finite = a.shape().rows_finite;
  if (a.shape().nonzero_rows && *a.shape().nonzero_rows == 0) shape.nonzero_rows = 0;
  return Matrix(
      "C(" + a.description() + ", " + lam.spec() + ")",
      [a, lam](std::size_t n, std::size_t k) {
        Rational s;
        for (std::size_t i = 0; i <= n; ++i) {
          Rational t = Rational(fib(i), fib(i + 1)) * a.entry(i, k);
          if (i > 0) t -= Rational(fib(i + 1), fib(i)) * a.entry(i - 1, k);
          s += lam.diff(idx(i)) * t;
        }
        return s / lam.at(idx(n));
      },
      [a](std::size_t n) -> std::optional<std::size_t> {
        std::size_t w = 0;
        for (std::size_t i = 0; i <= n; ++i) {
          const auto s = a.row_support(i);
          if (!s) return std::nullopt;
          w = std::max(w, *s);
        }
        return w;
      },
      shape);
}

OpNorm op_norm(const Matrix& a, const LambdaSeq& lambda, const Exponent& p, const SpaceSpec& Y,
               const ClassOptions& opts) {
  using K = SpaceSpec::Kind;
  if (Y.kind == K::kLp) {
    throw Error(ErrorCode::kUnsupportedTarget, "operator norm formulas cover linf, c, c0 and l1 targets only");
  }
  const std::size_t W = row_window(a, opts.window);
  const HatMatrix H(a, lambda);
  const SpaceSpec X = SpaceSpec::lp(p);
  const Ctx c{H, a, lambda, X, Y, opts, W, default_sweep(4, W)};
  const Exponent q = p.conjugate();
  OpNorm out;
  out.window = W;
  Evaluation ev;
  if (Y.kind == K::kL1) {
    if (p.is_one()) {
      ev = column_sup(c, Exponent(Rational(1)));
      out.formula = "sup_k sum_n |ehat_nk|";
    } else {
      ev = subset_rows(c, q);
      out.bracket = true;
      out.formula = "sup_F ||sum_{n in F} Ehat_n||_q, norm within [v, 4v]";
    }
  } else {
    ev = row_sup(c, [&](std::size_t n) { return norm_of(H.row(n), q, opts.precision); });
    out.formula = p.is_infinite() ? "sup_n sum_k |ehat_nk|"
                  : p.is_one()    ? "sup_{n,k} |ehat_nk|"
                                  : "sup_n ||Ehat_n||_q";
  }
  Real v = ev.last.value_or(Real::exact(0, opts.precision));
  if (out.bracket) v = subset_root(v, q);
  out.low = v;
  out.high = out.bracket ? Real::exact(4, opts.precision) * v : v;
  out.lower_bound = ev.lower_bound || !a.finite();
  out.exact = a.finite() && !ev.lower_bound;
  out.verdict = a.finite() ? exact_verdict(std::move(ev.points), true, "finitely determined")
                           : classify_growth(std::move(ev.points));
  return out;
}

}  // namespace fibla
