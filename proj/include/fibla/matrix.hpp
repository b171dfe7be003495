#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fibla/lambda.hpp"
#include "fibla/rational.hpp"
#include "fibla/triangle.hpp"

namespace fibla {

/// Infinite matrix (a_nk), not necessarily triangular, known row by row.
/// Entries are memoized; copies share the memo.
class Matrix {
 public:
  using Entry = std::function<Rational(std::size_t n, std::size_t k)>;
  /// a_nk = 0 for k >= support(n); nullopt for a row with infinite support.
  using Support = std::function<std::optional<std::size_t>(std::size_t n)>;

  struct Shape {
    /// Rows that may be queried; nullopt for all.
    std::optional<std::size_t> rows;
    /// Rows at or beyond this index are identically zero.
    std::optional<std::size_t> nonzero_rows;
    /// Every row (not only the stored ones) has finite support.
    bool rows_finite = true;
  };

  Matrix(std::string description, Entry entry, Support support, Shape shape);

  static Matrix zero();
  static Matrix identity();
  static Matrix from_triangle(const Triangle& t);
  /// Dense rows of any length. Rows past the list are zero when `zero_tail`,
  /// unavailable otherwise.
  static Matrix from_rows(std::vector<std::vector<Rational>> rows, bool zero_tail = true);

  /// JSON object {"kind": "dense"|"band"|"rows"|"identity"|"zero"|"E"|"Einv", ...};
  /// the format is described in the README. Throws kParse on malformed input.
  static Matrix from_json_text(const std::string& text, const LambdaSeq& lambda);
  /// Throws kIo when the file cannot be read.
  static Matrix from_file(const std::string& path, const LambdaSeq& lambda);

  /// Throws kWindowMismatch for n beyond the available rows.
  Rational entry(std::size_t n, std::size_t k) const;
  Rational operator()(std::size_t n, std::size_t k) const { return entry(n, k); }
  std::optional<std::size_t> row_support(std::size_t n) const;
  /// a_n0 .. a_n,width-1.
  std::vector<Rational> row(std::size_t n, std::size_t width) const;

  const Shape& shape() const;
  const std::string& description() const;
  /// Finitely many nonzero rows, each finitely supported.
  bool finite() const { return shape().nonzero_rows && shape().rows_finite; }

 private:
  struct State;
  std::shared_ptr<State> state_;
};

}  // namespace fibla
