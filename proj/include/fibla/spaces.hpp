#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fibla/exponent.hpp"
#include "fibla/lambda.hpp"
#include "fibla/real.hpp"
#include "fibla/verdict.hpp"
#include "fibla/window.hpp"
#include "fibla/witness.hpp"

namespace fibla {

/// Classical sequence space: "l1", "lp:<p>", "linf", "c0", "c".
struct SpaceSpec {
  enum class Kind { kL1, kLp, kLinf, kC0, kC };

  Kind kind = Kind::kLinf;
  /// 1 for l1, p for lp, infinity for linf, c0 and c.
  Exponent p = Exponent::infinity();

  static SpaceSpec l1() { return {Kind::kL1, Exponent(Rational(1))}; }
  static SpaceSpec linf() { return {Kind::kLinf, Exponent::infinity()}; }
  static SpaceSpec c0() { return {Kind::kC0, Exponent::infinity()}; }
  static SpaceSpec c() { return {Kind::kC, Exponent::infinity()}; }
  /// lp:1 and lp:inf collapse to l1 and linf.
  static SpaceSpec lp(const Exponent& p);
  /// Throws kParse, or kMissingExponent for a bare "lp".
  static SpaceSpec parse(std::string_view text);

  bool is_lp_family() const { return kind == Kind::kL1 || kind == Kind::kLp || kind == Kind::kLinf; }
  std::string to_string() const;
};

struct NormEstimate {
  Real value;
  std::size_t window = 0;
  /// p < inf: share of sum |y_n|^p carried by the last quarter of the window.
  double tail_fraction = 0.0;
  /// p = inf: index where the sup is attained.
  std::optional<std::size_t> sup_index;
};

/// || Ex ||_p over the window. Exact for p in {1, inf}.
NormEstimate space_norm(const SeqWindow& x, const LambdaSeq& lambda, const Exponent& p,
                        long precision = Real::kDefaultPrecision);
NormEstimate space_norm(const RealWindow& x, const LambdaSeq& lambda, const Exponent& p,
                        long precision = Real::kDefaultPrecision);

struct ParallelogramReport {
  Real lhs;  // ||u+v||^2 + ||u-v||^2
  Real rhs;  // 2(||u||^2 + ||v||^2)
  bool equal = false;      // consistent with equality under the certified bounds
  bool separated = false;  // |lhs - rhs| > 10 x certified error
};

/// Parallelogram law for the two Hilbert witnesses u, v.
ParallelogramReport parallelogram_check(const LambdaSeq& lambda, const Exponent& p,
                                        long precision = Real::kDefaultPrecision);

struct LambdaMReport {
  Real value;                      // max over k <= K of the certified tail sums
  std::vector<Real> tails;         // per k
  std::vector<std::size_t> cutoff; // truncation index per k
  Verdict verdict;
};

/// M = sup_k (lambda_k - lambda_{k-1}) sum_{n>=k} 1/lambda_n, estimated over
/// k <= K. Each tail is truncated where the certified remainder drops below
/// `tol`. Throws kDivergentTail unless (1/lambda_n) is known to be in l1,
/// kDomain for K < 2.
LambdaMReport lambda_M(const LambdaSeq& lambda, std::size_t K, double tol = 1e-30,
                       long precision = Real::kDefaultPrecision);

struct InclusionReport {
  Rational linf_lhs;  // ||x||_{l_inf(E)}
  Rational linf_rhs;  // 4 ||x||_inf
  bool linf_holds = false;
  std::optional<Real> lp_lhs;  // ||x||_{l_p(E)}
  std::optional<Real> lp_rhs;  // 4 M^{1/p} ||x||_p
  std::optional<bool> lp_holds;
};

/// Checks the two norm inequalities on a window. The l_p bound is only
/// evaluated when (1/lambda_n) is in l1; pass `M` to reuse a computed value.
InclusionReport inclusion_bounds_check(const SeqWindow& x, const LambdaSeq& lambda,
                                       const Exponent& p, std::optional<Real> M = std::nullopt);

/// Sweep of ||E x||_p over window sizes, classified by classify_growth.
/// A finitely supported x with p = inf is decided exactly.
Verdict membership_evidence(const SeqGenerator& x, const LambdaSeq& lambda, const Exponent& p,
                            const std::vector<std::size_t>& sweep,
                            long precision = Real::kDefaultPrecision);
/// Same for real-valued windows. The generator gets the window size and
/// the working precision.
Verdict membership_evidence_real(const std::function<RealWindow(std::size_t, long)>& x,
                                 const LambdaSeq& lambda, const Exponent& p,
                                 const std::vector<std::size_t>& sweep,
                                 long precision = Real::kDefaultPrecision);

/// Working precision for real-mode witnesses of length n: the entries grow
/// like f_{n+1}^2, so the bits needed grow linearly in n.
long witness_precision(std::size_t n, long base = Real::kDefaultPrecision);

}  // namespace fibla
