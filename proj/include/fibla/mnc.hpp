#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fibla/matclass.hpp"

namespace fibla {

struct MncEstimate {
  /// s(r) for r = 0..r_max: the inner sup over rows n >= r.
  std::vector<Real> s;
  /// Estimate of lim s(r).
  Real limit = Real::exact(0);
  /// ||L_A||_chi lies in [low, high].
  Real low = Real::exact(0);
  Real high = Real::exact(0);
  /// Rows of the hat matrix vanish past some r, so the limit is exact.
  bool exact = false;
  bool lower_bound = false;
  std::string formula;
  std::size_t window = 0;
  /// Decay evidence for s(r) -> 0.
  Verdict verdict;
};

/// Hausdorff measure of noncompactness of L_A on the domain of E in l_p,
/// Y in {c0, c, l1}. Throws kDomain for r_max < 4, kUnsupportedTarget,
/// and kAlphaLimitUndetermined when Y = c and a column of the hat matrix
/// does not settle over the window.
MncEstimate mnc_estimate(const Matrix& a, const LambdaSeq& lambda, const Exponent& p,
                         const SpaceSpec& Y, std::size_t r_max, const ClassOptions& opts = {});

/// kHoldsExactly: compact; kEvidenceBounded: evidence-compact;
/// kEvidenceDiverging: evidence-noncompact.
Verdict compactness_verdict(const Matrix& a, const LambdaSeq& lambda, const Exponent& p,
                            const SpaceSpec& Y, std::size_t r_max, const ClassOptions& opts = {});
Verdict compactness_verdict(const MncEstimate& m);

/// "compact", "evidence-compact", "evidence-noncompact" or "inconclusive".
std::string_view compactness_label(const Verdict& v);

}  // namespace fibla
