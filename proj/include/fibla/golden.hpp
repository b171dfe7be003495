#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fibla/exponent.hpp"
#include "fibla/real.hpp"

namespace fibla {

struct GoldenOptions {
  /// Window size; each check has its own default.
  std::optional<std::size_t> N;
  /// Restricts the parallelogram and power-law checks to one exponent.
  std::optional<Exponent> p;
  std::uint64_t seed = 1;
  long precision = Real::kDefaultPrecision;
};

struct GoldenResult {
  std::string id;
  std::string identity;  // the statement being checked
  bool passed = false;
  /// Key/value evidence, values rendered as text.
  std::vector<std::pair<std::string, std::string>> facts;
  std::vector<std::string> failures;
};

/// inverse-identity, composition, witnesses, oracle-equivalence,
/// parallelogram, basis, norm-inequalities, duals, matclass-mnc, fibonacci.
const std::vector<std::string>& golden_ids();

/// Throws kUnknownCondition for an unknown id.
GoldenResult run_golden(std::string_view id, const GoldenOptions& opts = {});

/// Every check, or only `only` when given.
std::vector<GoldenResult> run_golden_suite(const std::optional<std::string>& only,
                                           const GoldenOptions& opts = {});

}  // namespace fibla
