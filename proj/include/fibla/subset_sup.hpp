#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "fibla/exponent.hpp"
#include "fibla/rational.hpp"
#include "fibla/real.hpp"

namespace fibla {

enum class SubsetMode { kAuto, kExact, kSampled };

/// "auto" | "exact" | "sampled"; anything else throws kParse.
SubsetMode parse_subset_mode(std::string_view text);
std::string_view to_string(SubsetMode m);

struct SubsetSup {
  /// sum_k |sum_{n in K} r_nk|^q for the best K found (max_k for q = inf).
  Real value;
  /// Row indices of the best K.
  std::vector<std::size_t> subset;
  /// False when `value` is only a lower bound of the supremum.
  bool exhaustive = false;
  std::size_t evaluated = 0;
};

/// Supremum over finite row subsets K of sum_k |sum_{n in K} r_nk|^q.
/// kAuto enumerates all subsets up to 16 nonzero rows and samples beyond
/// that (greedy sign alignment, local flips, 10^4 random subsets seeded by
/// `seed`). kExact refuses more than 20 nonzero rows (kDomain).
SubsetSup subset_sup(const std::vector<std::vector<Rational>>& rows, const Exponent& q,
                     SubsetMode mode = SubsetMode::kAuto, std::uint64_t seed = 0,
                     long precision = Real::kDefaultPrecision);

/// (x)^(1/q) for the value of a subset_sup, identity for q = inf.
Real subset_root(const Real& value, const Exponent& q);

}  // namespace fibla
