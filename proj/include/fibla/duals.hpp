#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fibla/lambda.hpp"
#include "fibla/spaces.hpp"
#include "fibla/subset_sup.hpp"
#include "fibla/triangle.hpp"
#include "fibla/verdict.hpp"
#include "fibla/window.hpp"
#include "fibla/witness.hpp"

namespace fibla {

/// b_nk = a_n g_nk with g = E^{-1}. Rows beyond the window of a are unavailable.
Triangle alpha_matrix_B(const SeqWindow& a, const LambdaSeq& lambda);

/// abar_k(n) = a_k g_kk + lambda_k kernel_bracket(k) sum_{j=k+1}^{n} f_{j+1}^2 a_j.
/// Requires k < n < len(a), else kIndexOutOfRange.
Rational abar(const SeqWindow& a, const LambdaSeq& lambda, std::size_t k, std::size_t n);

/// t_nk = abar_k(n) below the diagonal, t_nn = g_nn a_n.
Triangle beta_matrix_T(const SeqWindow& a, const LambdaSeq& lambda);

struct DualOptions {
  std::size_t window = 32;
  SubsetMode mode = SubsetMode::kAuto;
  std::uint64_t seed = 0;
  long precision = Real::kDefaultPrecision;
};

struct DualReport {
  std::string id;  // d1..d8
  std::string lambda;
  std::string p;   // exponent of the space whose dual is tested
  std::size_t window = 0;
  SubsetMode mode = SubsetMode::kAuto;
  /// Quantity at the largest window.
  std::string value;
  /// d1 only: sampled subsets, so values are lower bounds.
  bool lower_bound = false;
  /// Per-window values live in verdict.sweep.
  Verdict verdict;
};

/// Evaluates the defining quantity of d1..d8 over windows 4, 8, ..., window.
/// `p` is the exponent of the space (q = conjugate enters d1 and d4).
/// Throws kUnknownCondition, kDomain for window < 4.
DualReport dual_condition(const SeqGenerator& a, const LambdaSeq& lambda, std::string_view id,
                          const Exponent& p, const DualOptions& opts = {});

enum class DualKind { kAlpha, kBeta, kGamma };
DualKind parse_dual_kind(std::string_view text);
std::string_view to_string(DualKind k);

/// Condition ids whose intersection is the dual of the domain of E in `space`.
std::vector<std::string> dual_conditions(const SpaceSpec& space, DualKind kind);

struct DualMembership {
  DualKind kind = DualKind::kBeta;
  SpaceSpec space;
  std::vector<DualReport> parts;
  Verdict verdict;
};

/// space must be l1, lp or linf (kUnsupportedTarget otherwise).
DualMembership dual_membership(const SeqGenerator& a, const LambdaSeq& lambda,
                               const SpaceSpec& space, DualKind kind,
                               const DualOptions& opts = {});

}  // namespace fibla
