#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fibla/lambda.hpp"
#include "fibla/matrix.hpp"
#include "fibla/spaces.hpp"
#include "fibla/subset_sup.hpp"
#include "fibla/verdict.hpp"

namespace fibla {

/// The matrix (ehat_nk) with ehat_nk = sum_j a_nj g_jk, through which A acts
/// on the domain of E. Rows are computed once and cached; safe for
/// concurrent readers.
class HatMatrix {
 public:
  /// Rows with infinite support are summed up to `m_max` terms.
  HatMatrix(Matrix a, LambdaSeq lambda, std::size_t m_max = 256);

  /// ehat_nk(m) = a_nk g_kk + lambda_k kernel_bracket(k) sum_{j=k+1}^{m} f_{j+1}^2 a_nj; k < m.
  Rational partial(std::size_t n, std::size_t k, std::size_t m) const;
  /// Exact for finitely supported rows. Throws kRowSeriesDivergent when
  /// sum_j f_{j+1}^2 a_nj shows divergence.
  Rational entry(std::size_t n, std::size_t k) const;
  /// ehat_nk = 0 for k >= support(n); m_max for rows with infinite support.
  std::size_t support(std::size_t n) const;
  bool exact_row(std::size_t n) const;
  /// ehat_n0 .. ehat_n,support(n)-1.
  const std::vector<Rational>& row(std::size_t n) const;
  /// Convergence evidence for sum_j f_{j+1}^2 a_nj.
  const Verdict& row_series(std::size_t n) const;

  const Matrix& matrix() const { return a_; }
  const LambdaSeq& lambda() const { return lambda_; }

 private:
  struct Row;
  struct Cache;
  const Row& get(std::size_t n) const;

  Matrix a_;
  LambdaSeq lambda_;
  std::size_t m_max_;
  std::shared_ptr<Cache> cache_;
};

/// sum_j a_nj (E^{-1})_jk for a finitely supported row, computed from the
/// entries of E^{-1} rather than the factored form used by HatMatrix.
Rational ehat_pairing(const Matrix& a, const LambdaSeq& lambda, std::size_t n, std::size_t k);

struct ClassOptions {
  std::size_t window = 24;
  SubsetMode mode = SubsetMode::kAuto;
  std::uint64_t seed = 0;
  long precision = Real::kDefaultPrecision;
};

struct ConditionResult {
  std::string id;
  std::string description;
  std::string value;  // quantity at the largest window
  bool lower_bound = false;
  Verdict verdict;
};

struct ClassReport {
  SpaceSpec X;  // domain is X^lambda(Fhat)
  SpaceSpec Y;
  std::size_t window = 0;
  std::vector<ConditionResult> conditions;
  Verdict verdict;
};

/// Condition ids characterizing A in (X^lambda(Fhat) : Y). Throws
/// kUnsupportedPair for pairs without a characterization.
std::vector<std::string> class_conditions(const SpaceSpec& X, const SpaceSpec& Y);

ClassReport class_check(const Matrix& a, const LambdaSeq& lambda, const SpaceSpec& X,
                        const SpaceSpec& Y, const ClassOptions& opts = {});

/// c_nk = (1/lambda_n) sum_{i<=n} (lambda_i - lambda_{i-1}) (f_i/f_{i+1} a_ik - f_{i+1}/f_i a_{i-1,k}),
/// i.e. E A. With `lambda2` the sequence of the target domain is used instead.
Matrix corollary_C(const Matrix& a, const LambdaSeq& lambda,
                   const std::optional<LambdaSeq>& lambda2 = std::nullopt);

struct OpNorm {
  Real low = Real::exact(0);
  Real high = Real::exact(0);
  /// low == high is the norm itself; otherwise [low, high] brackets it.
  bool bracket = false;
  /// Finitely determined (finitely many nonzero rows, exhaustive search).
  bool exact = false;
  /// The window only gives a lower estimate of `low`.
  bool lower_bound = false;
  std::string formula;
  std::size_t window = 0;
  Verdict verdict;
};

/// ||L_A|| on the domain of E in l_p. Y in {linf, c, c0} gives the norm,
/// Y = l1 gives it for p = 1 and the bracket [v, 4v] otherwise.
/// Throws kUnsupportedTarget for other Y.
OpNorm op_norm(const Matrix& a, const LambdaSeq& lambda, const Exponent& p, const SpaceSpec& Y,
               const ClassOptions& opts = {});

}  // namespace fibla
