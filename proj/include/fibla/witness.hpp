#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "fibla/exponent.hpp"
#include "fibla/lambda.hpp"
#include "fibla/window.hpp"

namespace fibla {

/// Target E-image of a witness: "u" -> (1,1,0,...), "v-hilbert" -> (1,-1,0,...),
/// "t" -> (1,1,1,...), "v-e0" -> e^(0), "power-law" -> ((n+1)^(-1/p)),
/// "alternating" -> ((-1)^n), "unit:<k>" -> E e^(k).
/// Rational only; power-law needs p in {1, inf} here.
SeqWindow witness_image(std::string_view id, const LambdaSeq& lambda,
                        const std::optional<Exponent>& p, std::size_t n);
RealWindow witness_image_real(std::string_view id, const LambdaSeq& lambda,
                              const std::optional<Exponent>& p, std::size_t n,
                              long precision = Real::kDefaultPrecision);

/// Witness window computed as the inverse transform of its image; "unit:<k>"
/// is the coordinate vector itself. Throws kUnknownWitness,
/// kMissingExponent, and kRequiresRealMode for an irrational power-law.
SeqWindow gen_witness(std::string_view id, const LambdaSeq& lambda,
                      const std::optional<Exponent>& p, std::size_t n);
RealWindow gen_witness_real(std::string_view id, const LambdaSeq& lambda,
                            const std::optional<Exponent>& p, std::size_t n,
                            long precision = Real::kDefaultPrecision);

/// Extendable sequence source.
struct SeqGenerator {
  std::string name;
  std::function<SeqWindow(std::size_t)> prefix;
  /// Every entry at index >= support is zero.
  std::optional<std::size_t> support;
};

/// "zero" | "ones" | "alt" | "unit:k" | "fibpow:m" (f_{k+1}^m, m may be
/// negative) | "values:a,b,..." (zero beyond) | "file:<path>" (zero beyond)
/// | "witness:<id>".
SeqGenerator parse_sequence(std::string_view spec, const LambdaSeq& lambda,
                            const std::optional<Exponent>& p = std::nullopt);

}  // namespace fibla
