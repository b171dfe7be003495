#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fibla/rational.hpp"
#include "fibla/real.hpp"

namespace fibla {

/// Outcome of an analytic condition checked on finite data. For conditions
/// of the form "quantity -> 0", kEvidenceBounded means the decay was
/// observed and kEvidenceDiverging means the quantity stays away from 0.
enum class Status { kHoldsExactly, kEvidenceBounded, kEvidenceDiverging, kInconclusive };

std::string_view to_string(Status s);

/// One sample of a sweep: window size and the quantity there.
struct SweepPoint {
  std::size_t n = 0;
  double value = 0.0;  // may saturate; use log2 for fitting
  double log2 = 0.0;   // log2|value|, -inf for 0
  std::string text;    // exact rendering when available

  static SweepPoint of(std::size_t n, const Rational& v);
  static SweepPoint of(std::size_t n, const Real& v);
};

struct Verdict {
  Status status = Status::kInconclusive;
  std::vector<SweepPoint> sweep;
  double slope = 0.0;  // fitted log-log slope over the last half of the sweep
  std::string note;

  bool holds() const {
    return status == Status::kHoldsExactly || status == Status::kEvidenceBounded;
  }
};

struct GrowthThresholds {
  double diverging_slope = 0.05;
  double relative_increment = 1e-6;
  /// Increments per unit of n decaying faster than n^rate are summable.
  double summable_rate = -1.25;
};

/// Bounded-vs-diverging classification of a sweep of a non-negative
/// quantity. Uses the running maximum, so it also fits sup-type sweeps.
Verdict classify_growth(std::vector<SweepPoint> sweep, const GrowthThresholds& t = {});

/// Classification for "quantity -> 0" conditions.
Verdict classify_decay(std::vector<SweepPoint> sweep, const GrowthThresholds& t = {});

/// Verdict for a finitely determined quantity.
Verdict exact_verdict(std::vector<SweepPoint> sweep, bool holds, std::string note = {});

/// All exact -> holds-exactly (or diverging if one fails exactly); any
/// diverging -> diverging; any inconclusive -> inconclusive; else bounded.
Verdict conjunction(std::span<const Verdict> parts);

/// Default N-sweep: powers of two from `lo` up to `hi`.
std::vector<std::size_t> default_sweep(std::size_t lo, std::size_t hi);

}  // namespace fibla
