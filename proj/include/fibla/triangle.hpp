#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fibla/rational.hpp"
#include "fibla/window.hpp"

namespace fibla {

/// N x N lower-triangular block stored row-major without the upper half.
class DenseWindow {
 public:
  /// Zero matrix; n >= 1.
  explicit DenseWindow(std::size_t n);

  std::size_t size() const { return n_; }
  /// Zero above the diagonal; n, k < size().
  const Rational& at(std::size_t n, std::size_t k) const;
  /// Requires k <= n < size().
  void set(std::size_t n, std::size_t k, Rational v);

  bool is_identity() const;

  friend bool operator==(const DenseWindow& a, const DenseWindow& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
  }

 private:
  static std::size_t index(std::size_t n, std::size_t k) { return n * (n + 1) / 2 + k; }

  std::size_t n_;
  std::vector<Rational> data_;
};

/// Infinite lower-triangular matrix given by an entry oracle. Entries are
/// memoized on first query; copies share the memo.
class Triangle {
 public:
  using Oracle = std::function<Rational(std::size_t n, std::size_t k)>;

  enum class Backing { kLambda, kFhat, kE, kEInverse, kComposition, kDense, kOracle };

  /// `oracle` is only called with k <= n. `rows` bounds the available rows
  /// (nullopt: all rows); querying beyond it throws kWindowMismatch.
  Triangle(Backing backing, std::string description, Oracle oracle,
           std::optional<std::size_t> rows = std::nullopt, bool memoize = true);

  static Triangle identity();
  /// Rows beyond the window are zero when `zero_tail`, unavailable otherwise.
  static Triangle from_dense(DenseWindow w, bool zero_tail = false);

  Rational entry(std::size_t n, std::size_t k) const;
  Rational operator()(std::size_t n, std::size_t k) const { return entry(n, k); }

  std::optional<std::size_t> rows() const;
  Backing backing() const;
  const std::string& description() const;

  DenseWindow window(std::size_t n) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// entry(n,k) = sum_{j=k..n} A(n,j) B(j,k).
Triangle triangle_compose(const Triangle& a, const Triangle& b);

/// (Ax)_n = sum_{k<=n} A(n,k) x_k for n < len(x). Throws kWindowMismatch
/// when A has fewer rows than x.
SeqWindow triangle_apply(const Triangle& a, const SeqWindow& x);
RealWindow triangle_apply(const Triangle& a, const RealWindow& x);

/// Inverse of the leading N x N block by forward substitution. Throws
/// kSingularDiagonal at the first zero diagonal entry.
DenseWindow triangle_invert(const Triangle& a, std::size_t n);

/// x with Ax = y on the window, by forward substitution.
SeqWindow triangle_solve(const Triangle& a, const SeqWindow& y);

}  // namespace fibla
