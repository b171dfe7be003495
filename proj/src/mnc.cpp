#include "fibla/mnc.hpp"

#include <algorithm>

#include "fibla/error.hpp"

namespace fibla {

namespace {

Real row_norm(const std::vector<Rational>& v, const Exponent& q, long prec) {
  if (v.empty()) return Real::exact(0, prec);
  return window_norm(v, q, prec);
}

}  // namespace

MncEstimate mnc_estimate(const Matrix& a, const LambdaSeq& lambda, const Exponent& p,
                         const SpaceSpec& Y, std::size_t r_max, const ClassOptions& opts) {
  using K = SpaceSpec::Kind;
  if (r_max < 4) throw Error(ErrorCode::kDomain, "rmax must be at least 4");
  if (Y.kind != K::kC0 && Y.kind != K::kC && Y.kind != K::kL1) {
    throw Error(ErrorCode::kUnsupportedTarget, "noncompactness estimates cover c0, c and l1 targets");
  }
  const long prec = opts.precision;
  const Exponent q = p.conjugate();
  const bool finite = a.finite();
  std::size_t W = finite ? *a.shape().nonzero_rows : 2 * r_max;
  if (!finite && a.shape().rows) W = std::min(W, *a.shape().rows);
  const HatMatrix H(a, lambda);

  MncEstimate out;
  out.window = W;

  // alpha_k for Y = c: zero when the rows vanish, else columns must settle.
  std::vector<Rational> alpha;
  std::size_t rows_used = W;
  if (Y.kind == K::kC && !finite) {
    const std::size_t half = W / 2;
    for (std::size_t k = 0; k < half; ++k) {
      const Rational ref = H.entry(W - 1, k);
      for (std::size_t n = half; n < W; ++n) {
        if (H.entry(n, k) != ref) {
          throw Error(ErrorCode::kAlphaLimitUndetermined,
                      "column " + std::to_string(k) + " of the hat matrix does not settle over rows " +
                          std::to_string(half) + ".." + std::to_string(W - 1));
        }
      }
      alpha.push_back(ref);
    }
    rows_used = half;
  }

  // rho(n) for the row-type targets.
  auto rho = [&](std::size_t n) {
    std::vector<Rational> e = H.row(n);
    if (!alpha.empty()) {
      e.resize(alpha.size());
      for (std::size_t k = 0; k < alpha.size(); ++k) e[k] -= alpha[k];
    }
    return row_norm(e, q, prec);
  };

  std::vector<Real> s(r_max + 1, Real::exact(0, prec));
  if (Y.kind == K::kL1 && p.is_one()) {
    out.formula = "lim_r sup_k sum_{n>=r} |ehat_nk|";
    std::size_t w = 0;
    for (std::size_t n = 0; n < W; ++n) w = std::max(w, H.support(n));
    std::vector<Rational> tail(w);
    for (std::size_t r = W; r-- > 0;) {
      const auto& e = H.row(r);
      for (std::size_t k = 0; k < e.size(); ++k) tail[k] += e[k].abs();
      if (r <= r_max) {
        Rational m;
        for (const auto& t : tail) m = max(m, t);
        s[r] = Real::exact(m, prec);
      }
    }
  } else if (Y.kind == K::kL1) {
    out.formula = "lim_r sup_{F in N_r} ||sum_{n in F} Ehat_n||_q, chi within [v, 4v]";
    for (std::size_t r = std::min(r_max, W); r-- > 0;) {
      std::vector<std::vector<Rational>> rows;
      for (std::size_t n = r; n < W; ++n) rows.push_back(H.row(n));
      const auto sup = subset_sup(rows, q, opts.mode, opts.seed, prec);
      out.lower_bound = out.lower_bound || !sup.exhaustive;
      s[r] = subset_root(sup.value, q);
      // Subsets of N_{r+1} are subsets of N_r.
      if (r < r_max) s[r] = max(s[r], s[r + 1]);
    }
  } else {
    out.formula = Y.kind == K::kC ? "lim_r sup_{n>=r} ||Ehat_n - alpha||_q, chi within [s/2, s]"
                                  : "lim_r sup_{n>=r} ||Ehat_n||_q";
    Real run = Real::exact(0, prec);
    for (std::size_t r = rows_used; r-- > 0;) {
      run = max(run, rho(r));
      if (r <= r_max) s[r] = run;
    }
  }
  // Past the last computed row the running sup stays at the tail value.
  if (!finite) {
    for (std::size_t r = std::min(rows_used, r_max + 1); r <= r_max; ++r) s[r] = s[std::max<std::size_t>(rows_used, 1) - 1];
  }
  out.s = s;

  std::vector<SweepPoint> pts;
  for (std::size_t r = 1; r <= r_max; ++r) pts.push_back(SweepPoint::of(r, s[r]));
  if (finite) {
    out.exact = true;
    out.limit = Real::exact(0, prec);
    out.verdict = exact_verdict(std::move(pts), true,
                                "rows vanish from r = " + std::to_string(W) + " on");
  } else {
    out.limit = s[r_max];
    out.lower_bound = true;
    out.verdict = classify_decay(std::move(pts));
  }
  const Real half = Real::exact(Rational(BigInt(1), BigInt(2)), prec);
  if (Y.kind == K::kC) {
    out.low = half * out.limit;
    out.high = out.limit;
  } else if (Y.kind == K::kL1 && !p.is_one()) {
    out.low = out.limit;
    out.high = Real::exact(4, prec) * out.limit;
  } else {
    out.low = out.limit;
    out.high = out.limit;
  }
  return out;
}

Verdict compactness_verdict(const MncEstimate& m) {
  Verdict v = m.verdict;
  if (m.exact) {
    const bool zero = m.limit.is_exact() && m.limit.exact_value()->is_zero();
    v.status = zero ? Status::kHoldsExactly : Status::kEvidenceDiverging;
    v.note = zero ? "measure of noncompactness is exactly 0" : "measure of noncompactness is positive";
  }
  return v;
}

Verdict compactness_verdict(const Matrix& a, const LambdaSeq& lambda, const Exponent& p,
                            const SpaceSpec& Y, std::size_t r_max, const ClassOptions& opts) {
  return compactness_verdict(mnc_estimate(a, lambda, p, Y, r_max, opts));
}

std::string_view compactness_label(const Verdict& v) {
  switch (v.status) {
    case Status::kHoldsExactly: return "compact";
    case Status::kEvidenceBounded: return "evidence-compact";
    case Status::kEvidenceDiverging: return "evidence-noncompact";
    case Status::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

}  // namespace fibla
