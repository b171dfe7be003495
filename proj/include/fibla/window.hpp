#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fibla/rational.hpp"
#include "fibla/real.hpp"

namespace fibla {

/// Where a window came from: enough to regenerate any prefix.
struct Provenance {
  std::string generator;
  std::string lambda;
  std::optional<std::string> p;
  std::optional<std::size_t> index;

  std::string to_string() const;
};

/// Finite prefix x_0..x_{N-1} of a sequence. Never empty.
class SeqWindow {
 public:
  /// Throws kWindowMismatch for an empty vector.
  explicit SeqWindow(std::vector<Rational> values, Provenance provenance = {});

  static SeqWindow zeros(std::size_t n, Provenance provenance = {});

  std::size_t size() const { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  Rational& operator[](std::size_t i) { return values_[i]; }
  /// x_i, with x_i = 0 for negative i.
  Rational at(long i) const;

  const std::vector<Rational>& values() const { return values_; }
  const Provenance& provenance() const { return provenance_; }
  void set_provenance(Provenance p) { provenance_ = std::move(p); }

  /// First n entries; n <= size().
  SeqWindow prefix(std::size_t n) const;

  friend bool operator==(const SeqWindow& a, const SeqWindow& b) { return a.values_ == b.values_; }

 private:
  std::vector<Rational> values_;
  Provenance provenance_;
};

/// Window of certified reals, used where entries are irrational.
class RealWindow {
 public:
  explicit RealWindow(std::vector<Real> values, Provenance provenance = {});
  static RealWindow from_exact(const SeqWindow& w, long precision = Real::kDefaultPrecision);

  std::size_t size() const { return values_.size(); }
  const Real& operator[](std::size_t i) const { return values_[i]; }
  const std::vector<Real>& values() const { return values_; }
  const Provenance& provenance() const { return provenance_; }

 private:
  std::vector<Real> values_;
  Provenance provenance_;
};

/// One rational per line; blank lines and '#' comments are skipped.
SeqWindow read_window_csv(std::istream& in, Provenance provenance = {});
SeqWindow read_window_file(const std::string& path);
void write_window_csv(std::ostream& out, const SeqWindow& w);

}  // namespace fibla
