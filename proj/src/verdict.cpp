#include "fibla/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fibla {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Least-squares slope of ys against xs, skipping non-finite ys.
std::optional<double> fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(ys[i])) continue;
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    ++m;
  }
  if (m < 2) return std::nullopt;
  const double den = m * sxx - sx * sx;
  if (den == 0) return std::nullopt;
  return (m * sxy - sx * sy) / den;
}

std::vector<double> running_max_log(const std::vector<SweepPoint>& s) {
  std::vector<double> out;
  double cur = kNegInf;
  for (const auto& p : s) {
    cur = std::max(cur, p.log2);
    out.push_back(cur);
  }
  return out;
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::kHoldsExactly: return "holds-exactly";
    case Status::kEvidenceBounded: return "evidence-bounded";
    case Status::kEvidenceDiverging: return "evidence-diverging";
    case Status::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

SweepPoint SweepPoint::of(std::size_t n, const Rational& v) {
  return SweepPoint{n, v.to_double(), v.log2_abs(), v.to_string()};
}

SweepPoint SweepPoint::of(std::size_t n, const Real& v) {
  const Mpfr m = v.midpoint();
  double lg = kNegInf;
  if (mpfr_sgn(m.get()) != 0) {
    Mpfr a(m.precision());
    mpfr_abs(a.get(), m.get(), MPFR_RNDN);
    mpfr_log2(a.get(), a.get(), MPFR_RNDN);
    lg = mpfr_get_d(a.get(), MPFR_RNDN);
  }
  return SweepPoint{n, v.to_double(), lg, v.to_string(25)};
}

Verdict classify_growth(std::vector<SweepPoint> sweep, const GrowthThresholds& t) {
  Verdict v;
  v.sweep = std::move(sweep);
  const auto& s = v.sweep;
  if (s.empty()) {
    v.note = "empty sweep";
    return v;
  }
  const auto m = running_max_log(s);
  if (!std::isfinite(m.back())) {
    v.status = Status::kEvidenceBounded;
    v.note = "identically zero over the sweep";
    return v;
  }
  if (s.size() < 2) {
    v.note = "single sample";
    return v;
  }
  const std::size_t half = s.size() / 2;
  const std::size_t start = std::min(half, s.size() - 2);
  std::vector<double> xs, ys;
  for (std::size_t i = start; i < s.size(); ++i) {
    xs.push_back(std::log2(static_cast<double>(std::max<std::size_t>(s[i].n, 1))));
    ys.push_back(m[i]);
  }
  v.slope = fit_slope(xs, ys).value_or(0.0);
  if (v.slope > t.diverging_slope) {
    v.status = Status::kEvidenceDiverging;
    v.note = "log-log slope above threshold";
    return v;
  }
  std::size_t q = (3 * s.size()) / 4;
  q = std::min(q, s.size() - 2);
  const double rel = std::isfinite(m[q]) ? 1.0 - std::exp2(m[q] - m.back()) : 1.0;
  if (rel < t.relative_increment) {
    v.status = Status::kEvidenceBounded;
    v.note = "relative increment over last quarter below threshold";
    return v;
  }
  // Per-unit increments over the last half; summable decay means bounded.
  std::vector<double> rx, ry;
  for (std::size_t i = std::max<std::size_t>(start, 1); i < s.size(); ++i) {
    if (!std::isfinite(m[i - 1]) || s[i].n <= s[i - 1].n) continue;
    const double frac = 1.0 - std::exp2(m[i - 1] - m[i]);
    if (frac <= 0) continue;
    rx.push_back(std::log2(static_cast<double>(s[i].n)));
    ry.push_back(m[i] + std::log2(frac) - std::log2(static_cast<double>(s[i].n - s[i - 1].n)));
  }
  if (rx.size() >= 2) {
    const auto rate = fit_slope(rx, ry);
    if (rate && *rate < t.summable_rate) {
      v.status = Status::kEvidenceBounded;
      v.note = "increments decay at a summable rate";
      return v;
    }
  }
  v.note = "no clear trend";
  return v;
}

Verdict classify_decay(std::vector<SweepPoint> sweep, const GrowthThresholds& t) {
  Verdict v;
  v.sweep = std::move(sweep);
  const auto& s = v.sweep;
  if (s.empty()) {
    v.note = "empty sweep";
    return v;
  }
  if (!std::isfinite(s.back().log2)) {
    v.status = Status::kEvidenceBounded;
    v.note = "reached zero";
    return v;
  }
  if (s.size() < 2) {
    v.note = "single sample";
    return v;
  }
  const std::size_t start = std::min(s.size() / 2, s.size() - 2);
  std::vector<double> xs, ys;
  for (std::size_t i = start; i < s.size(); ++i) {
    xs.push_back(std::log2(static_cast<double>(std::max<std::size_t>(s[i].n, 1))));
    ys.push_back(s[i].log2);
  }
  v.slope = fit_slope(xs, ys).value_or(0.0);
  if (v.slope < -t.diverging_slope) {
    v.status = Status::kEvidenceBounded;
    v.note = "decaying";
    return v;
  }
  if (v.slope > t.diverging_slope) {
    v.status = Status::kEvidenceDiverging;
    v.note = "growing";
    return v;
  }
  std::size_t q = std::min((3 * s.size()) / 4, s.size() - 2);
  const double rel = std::abs(1.0 - std::exp2(s[q].log2 - s.back().log2));
  if (rel < t.relative_increment) {
    v.status = Status::kEvidenceDiverging;
    v.note = "stationary away from zero";
    return v;
  }
  v.note = "no clear trend";
  return v;
}

Verdict exact_verdict(std::vector<SweepPoint> sweep, bool holds, std::string note) {
  Verdict v;
  v.sweep = std::move(sweep);
  v.status = holds ? Status::kHoldsExactly : Status::kEvidenceDiverging;
  v.note = note.empty() ? (holds ? "finitely determined" : "fails on finite data") : std::move(note);
  return v;
}

Verdict conjunction(std::span<const Verdict> parts) {
  Verdict v;
  if (parts.empty()) {
    v.status = Status::kHoldsExactly;
    v.note = "no conditions";
    return v;
  }
  bool all_exact = true;
  bool any_div = false;
  bool any_inc = false;
  for (const auto& p : parts) {
    all_exact = all_exact && p.status == Status::kHoldsExactly;
    any_div = any_div || p.status == Status::kEvidenceDiverging;
    any_inc = any_inc || p.status == Status::kInconclusive;
    v.slope = std::max(v.slope, p.slope);
  }
  if (all_exact) v.status = Status::kHoldsExactly;
  else if (any_div) v.status = Status::kEvidenceDiverging;
  else if (any_inc) v.status = Status::kInconclusive;
  else v.status = Status::kEvidenceBounded;
  v.note = "conjunction of " + std::to_string(parts.size()) + " conditions";
  return v;
}

std::vector<std::size_t> default_sweep(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> out;
  for (std::size_t n = std::max<std::size_t>(lo, 1); n <= hi; n *= 2) out.push_back(n);
  if (out.empty() || out.back() != hi) out.push_back(hi);
  return out;
}

}  // namespace fibla
