#pragma once

#include <cstddef>

#include "fibla/lambda.hpp"
#include "fibla/triangle.hpp"
#include "fibla/window.hpp"

namespace fibla {

/// lambda_nk = (lambda_k - lambda_{k-1}) / lambda_n.
Triangle make_lambda_matrix(const LambdaSeq& lambda);
/// Two-band Fibonacci difference triangle: f_n/f_{n+1} on the diagonal,
/// -f_{n+1}/f_n below it.
Triangle make_fhat();
/// Closed-form entries of E = Lambda * Fhat.
Triangle make_E(const LambdaSeq& lambda);
/// Closed-form entries g_nk of the inverse of E.
Triangle make_E_inverse(const LambdaSeq& lambda);

/// y = Ex, accumulated as y_n = (1/lambda_n) sum_{k<=n} (lambda_k - lambda_{k-1}) Fhat_k(x).
SeqWindow forward_transform(const SeqWindow& x, const LambdaSeq& lambda);
RealWindow forward_transform(const RealWindow& x, const LambdaSeq& lambda);

/// x = E^{-1} y via the alternating double sum
/// x_k = sum_{j<=k} sum_{i=j-1}^{j} (-1)^{j-i} f_{k+1}^2 lambda_i y_i / ((lambda_j - lambda_{j-1}) f_j f_{j+1}).
SeqWindow inverse_transform(const SeqWindow& y, const LambdaSeq& lambda);
RealWindow inverse_transform(const RealWindow& y, const LambdaSeq& lambda);

/// g_kk = lambda_k f_{k+1}^2 / ((lambda_k - lambda_{k-1}) f_k f_{k+1}).
Rational diag_weight(const LambdaSeq& lambda, std::size_t k);
/// 1/((lambda_k - lambda_{k-1}) f_k f_{k+1}) - 1/((lambda_{k+1} - lambda_k) f_{k+1} f_{k+2}),
/// so that g_nk = lambda_k f_{n+1}^2 kernel_bracket(k) for k < n.
Rational kernel_bracket(const LambdaSeq& lambda, std::size_t k);

/// Column k of E^{-1}, truncated to n entries. Requires k < n.
SeqWindow basis_vector(std::size_t k, const LambdaSeq& lambda, std::size_t n);

}  // namespace fibla
