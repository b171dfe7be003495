#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fibla {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitDomainError = 3;

/// Version of the JSON report layout.
inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::string command;
  std::string lambda = "linear:1,1";
  std::optional<std::string> p;
  std::size_t window = 32;
  std::size_t rmax = 32;
  long precision = 256;
  std::string mode = "exact";  // exact | float
  std::uint64_t seed = 0;
  std::optional<std::string> output;

  // command inputs
  std::optional<std::string> x, y, a, A;
  bool inverse = false;
  bool csv = false;
  std::size_t k = 0;
  std::string X = "lp:2", Y = "linf", space = "lp:2", kind = "beta";
  std::optional<std::string> condition, only, what, from;
  std::string subset_mode = "auto";
};

/// Runs one command line (without the program name). Reports go to `out`
/// unless an output path is set; diagnostics go to `err`. Returns the exit
/// code: 0 ok, 1 verification failure, 2 input error, 3 domain error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fibla
