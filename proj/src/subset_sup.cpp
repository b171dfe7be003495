#include "fibla/subset_sup.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "fibla/error.hpp"

namespace fibla {

namespace {

constexpr std::size_t kExhaustiveRows = 16;
constexpr std::size_t kExactCap = 20;
constexpr std::size_t kFullyExactRows = 12;
constexpr std::size_t kRandomSubsets = 10000;
constexpr std::size_t kScreenKeep = 256;

using Mask = std::vector<bool>;

struct Problem {
  std::vector<std::vector<Rational>> rows;  // nonzero rows only, padded
  std::vector<std::size_t> origin;
  std::size_t cols = 0;
  Exponent q = Exponent::infinity();
  long precision = Real::kDefaultPrecision;
  std::vector<std::vector<double>> scaled;  // rows / 2^max_log2
};

Real evaluate(const Problem& pr, const Mask& mask) {
  std::vector<Rational> col(pr.cols);
  for (std::size_t i = 0; i < pr.rows.size(); ++i) {
    if (!mask[i]) continue;
    for (std::size_t k = 0; k < pr.cols; ++k) col[k] += pr.rows[i][k];
  }
  if (pr.q.value().is_integer()) {
    const unsigned long e = pr.q.value().num().get_ui();
    Rational s;
    for (const auto& c : col) s += c.abs().pow(e);
    return Real::exact(s, pr.precision);
  }
  return power_sum(col, pr.q.value(), pr.precision);
}

double dvalue(const std::vector<double>& col, double q) {
  double s = 0;
  for (double c : col) s += q == 1.0 ? std::abs(c) : std::pow(std::abs(c), q);
  return s;
}

double dvalue(const Problem& pr, const Mask& mask) {
  std::vector<double> col(pr.cols, 0.0);
  for (std::size_t i = 0; i < pr.rows.size(); ++i) {
    if (!mask[i]) continue;
    for (std::size_t k = 0; k < pr.cols; ++k) col[k] += pr.scaled[i][k];
  }
  return dvalue(col, pr.q.value().to_double());
}

bool better(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return *a.exact_value() > *b.exact_value();
  return mpfr_cmp(a.midpoint().get(), b.midpoint().get()) > 0;
}

// Evaluates the candidates exactly; the result value is the hull of their max.
SubsetSup finish(const Problem& pr, const std::vector<Mask>& candidates, bool exhaustive) {
  SubsetSup out{Real::exact(0, pr.precision), {}, exhaustive, 0};
  bool first = true;
  Mask best;
  for (const auto& m : candidates) {
    Real v = evaluate(pr, m);
    ++out.evaluated;
    if (first || better(v, out.value)) best = m;
    out.value = first ? v : max(out.value, v);
    first = false;
  }
  for (std::size_t i = 0; i < best.size(); ++i) {
    if (best[i]) out.subset.push_back(pr.origin[i]);
  }
  return out;
}

Mask from_bits(std::uint64_t bits, std::size_t m) {
  Mask mask(m);
  for (std::size_t i = 0; i < m; ++i) mask[i] = (bits >> i) & 1U;
  return mask;
}

SubsetSup enumerate(const Problem& pr) {
  const std::size_t m = pr.rows.size();
  const std::uint64_t total = std::uint64_t{1} << m;
  if (m <= kFullyExactRows) {
    std::vector<Mask> all;
    all.reserve(total);
    for (std::uint64_t b = 0; b < total; ++b) all.push_back(from_bits(b, m));
    return finish(pr, all, true);
  }
  // Screen in scaled doubles along a Gray code, then decide the near-best exactly.
  const double q = pr.q.value().to_double();
  std::vector<double> col(pr.cols, 0.0);
  std::vector<std::pair<double, std::uint64_t>> scores;
  scores.reserve(total);
  scores.emplace_back(0.0, 0);
  std::uint64_t gray = 0;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int bit = std::countr_zero(i);
    gray ^= std::uint64_t{1} << bit;
    const double sign = (gray >> bit) & 1U ? 1.0 : -1.0;
    for (std::size_t k = 0; k < pr.cols; ++k) col[k] += sign * pr.scaled[bit][k];
    scores.emplace_back(dvalue(col, q), gray);
  }
  double top = 0;
  for (const auto& s : scores) top = std::max(top, s.first);
  const double cut = top * (1.0 - 1e-9);
  std::vector<std::pair<double, std::uint64_t>> near;
  for (const auto& s : scores) {
    if (s.first >= cut) near.push_back(s);
  }
  std::sort(near.begin(), near.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  if (near.size() > kScreenKeep) near.resize(kScreenKeep);
  std::vector<Mask> cands;
  for (const auto& s : near) cands.push_back(from_bits(s.second, m));
  return finish(pr, cands, true);
}

// Flip single rows while the double score improves.
void improve(const Problem& pr, Mask& mask) {
  double cur = dvalue(pr, mask);
  for (int pass = 0; pass < 10; ++pass) {
    bool moved = false;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      mask[i] = !mask[i];
      const double v = dvalue(pr, mask);
      if (v > cur * (1 + 1e-12)) {
        cur = v;
        moved = true;
      } else {
        mask[i] = !mask[i];
      }
    }
    if (!moved) break;
  }
}

SubsetSup sample(const Problem& pr, std::uint64_t seed) {
  const std::size_t m = pr.rows.size();
  std::vector<Mask> starts;
  // K(sigma) = rows with <sigma, r_n> > 0 for a few sign patterns sigma.
  auto aligned = [&](const std::vector<double>& sigma) {
    Mask mask(m);
    for (std::size_t i = 0; i < m; ++i) {
      double d = 0;
      for (std::size_t k = 0; k < pr.cols; ++k) d += sigma[k] * pr.scaled[i][k];
      mask[i] = d > 0;
    }
    return mask;
  };
  for (double s : {1.0, -1.0}) starts.push_back(aligned(std::vector<double>(pr.cols, s)));
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> sigma(pr.cols);
    for (std::size_t k = 0; k < pr.cols; ++k) {
      sigma[k] = pr.scaled[i][k] > 0 ? 1.0 : (pr.scaled[i][k] < 0 ? -1.0 : 0.0);
    }
    starts.push_back(aligned(sigma));
  }
  for (std::size_t k = 0; k < pr.cols; ++k) {
    for (double s : {1.0, -1.0}) {
      std::vector<double> sigma(pr.cols, 0.0);
      sigma[k] = s;
      starts.push_back(aligned(sigma));
    }
  }
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t t = 0; t < kRandomSubsets; ++t) {
    Mask mask(m);
    for (std::size_t i = 0; i < m; ++i) mask[i] = coin(rng);
    starts.push_back(std::move(mask));
  }
  std::vector<std::pair<double, std::size_t>> scored;
  for (std::size_t i = 0; i < starts.size(); ++i) scored.emplace_back(dvalue(pr, starts[i]), i);
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    return a.first > b.first || (a.first == b.first && a.second < b.second);
  });
  std::set<Mask> seen;
  std::vector<Mask> cands;
  for (std::size_t j = 0; j < scored.size() && cands.size() < 8; ++j) {
    Mask mask = starts[scored[j].second];
    improve(pr, mask);
    if (seen.insert(mask).second) cands.push_back(std::move(mask));
  }
  return finish(pr, cands, false);
}

SubsetSup sup_inf(const Problem& pr) {
  // max_k max(sum of positive entries, -sum of negative entries) in column k.
  SubsetSup out{Real::exact(0, pr.precision), {}, true, 0};
  Rational best;
  std::size_t best_k = 0;
  bool positive = true;
  for (std::size_t k = 0; k < pr.cols; ++k) {
    Rational pos, neg;
    for (const auto& r : pr.rows) (r[k].sign() > 0 ? pos : neg) += r[k];
    if (pos > best) best = pos, best_k = k, positive = true;
    if (-neg > best) best = -neg, best_k = k, positive = false;
  }
  for (std::size_t i = 0; i < pr.rows.size(); ++i) {
    const int s = pr.rows[i][best_k].sign();
    if ((positive && s > 0) || (!positive && s < 0)) out.subset.push_back(pr.origin[i]);
  }
  out.value = Real::exact(best, pr.precision);
  out.evaluated = pr.cols;
  return out;
}

}  // namespace

SubsetMode parse_subset_mode(std::string_view text) {
  if (text == "auto") return SubsetMode::kAuto;
  if (text == "exact") return SubsetMode::kExact;
  if (text == "sampled") return SubsetMode::kSampled;
  throw Error(ErrorCode::kParse, "unknown subset mode '" + std::string(text) + "'");
}

std::string_view to_string(SubsetMode m) {
  switch (m) {
    case SubsetMode::kAuto: return "auto";
    case SubsetMode::kExact: return "exact";
    case SubsetMode::kSampled: return "sampled";
  }
  return "auto";
}

SubsetSup subset_sup(const std::vector<std::vector<Rational>>& rows, const Exponent& q,
                     SubsetMode mode, std::uint64_t seed, long precision) {
  Problem pr;
  pr.q = q;
  pr.precision = precision;
  for (const auto& r : rows) pr.cols = std::max(pr.cols, r.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (std::all_of(rows[i].begin(), rows[i].end(), [](const Rational& x) { return x.is_zero(); })) {
      continue;
    }
    auto r = rows[i];
    r.resize(pr.cols);
    for (const auto& x : r) top = std::max(top, x.log2_abs());
    pr.rows.push_back(std::move(r));
    pr.origin.push_back(i);
  }
  if (pr.rows.empty()) return SubsetSup{Real::exact(0, precision), {}, true, 1};
  if (q.is_infinite()) return sup_inf(pr);
  for (const auto& r : pr.rows) {
    std::vector<double> s(pr.cols);
    for (std::size_t k = 0; k < pr.cols; ++k) {
      s[k] = r[k].is_zero() ? 0.0 : r[k].sign() * std::exp2(r[k].log2_abs() - top);
    }
    pr.scaled.push_back(std::move(s));
  }
  const std::size_t m = pr.rows.size();
  if (mode == SubsetMode::kExact && m > kExactCap) {
    throw Error(ErrorCode::kDomain, "exact subset enumeration over " + std::to_string(m) +
                                        " rows exceeds the cap of " + std::to_string(kExactCap));
  }
  const bool exhaustive = mode == SubsetMode::kExact || (mode == SubsetMode::kAuto && m <= kExhaustiveRows);
  return exhaustive ? enumerate(pr) : sample(pr, seed);
}

Real subset_root(const Real& value, const Exponent& q) {
  if (q.is_infinite() || q.is_one()) return value;
  return pow_nonneg(value, q.value().inverse());
}

}  // namespace fibla
