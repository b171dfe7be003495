#include "fibla/triangle.hpp"

#include <limits>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "fibla/error.hpp"

namespace fibla {

namespace {
const Rational kZero;
}

DenseWindow::DenseWindow(std::size_t n) : n_(n), data_(n * (n + 1) / 2) {
  if (n == 0) throw Error(ErrorCode::kWindowMismatch, "dense window of size 0");
}

const Rational& DenseWindow::at(std::size_t n, std::size_t k) const {
  if (n >= n_ || k >= n_) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "(" + std::to_string(n) + "," + std::to_string(k) + ") outside " +
                    std::to_string(n_) + "x" + std::to_string(n_));
  }
  return k > n ? kZero : data_[index(n, k)];
}

void DenseWindow::set(std::size_t n, std::size_t k, Rational v) {
  if (n >= n_ || k > n) throw Error(ErrorCode::kIndexOutOfRange, "dense set outside lower triangle");
  data_[index(n, k)] = std::move(v);
}

bool DenseWindow::is_identity() const {
  for (std::size_t n = 0; n < n_; ++n) {
    for (std::size_t k = 0; k <= n; ++k) {
      if (data_[index(n, k)] != Rational(n == k ? 1 : 0)) return false;
    }
  }
  return true;
}

struct Triangle::State {
  Backing backing;
  std::string description;
  Oracle oracle;
  std::optional<std::size_t> rows;
  bool memoize;
  mutable std::shared_mutex mutex;
  mutable std::unordered_map<std::uint64_t, Rational> memo;
};

Triangle::Triangle(Backing backing, std::string description, Oracle oracle,
                   std::optional<std::size_t> rows, bool memoize)
    : state_(std::make_shared<State>()) {
  state_->backing = backing;
  state_->description = std::move(description);
  state_->oracle = std::move(oracle);
  state_->rows = rows;
  state_->memoize = memoize;
}

std::optional<std::size_t> Triangle::rows() const { return state_->rows; }
Triangle::Backing Triangle::backing() const { return state_->backing; }
const std::string& Triangle::description() const { return state_->description; }

Triangle Triangle::identity() {
  return Triangle(
      Backing::kOracle, "identity",
      [](std::size_t n, std::size_t k) { return Rational(n == k ? 1 : 0); }, std::nullopt, false);
}

Triangle Triangle::from_dense(DenseWindow w, bool zero_tail) {
  const std::size_t n = w.size();
  auto shared = std::make_shared<const DenseWindow>(std::move(w));
  return Triangle(
      Backing::kDense, "dense " + std::to_string(n) + "x" + std::to_string(n),
      [shared, n](std::size_t i, std::size_t k) {
        return i < n ? shared->at(i, k) : Rational(0);
      },
      zero_tail ? std::nullopt : std::optional<std::size_t>(n), false);
}

Rational Triangle::entry(std::size_t n, std::size_t k) const {
  if (k > n) return Rational(0);
  const State& s = *state_;
  if (s.rows && n >= *s.rows) {
    throw Error(ErrorCode::kWindowMismatch,
                "row " + std::to_string(n) + " of " + s.description + " beyond its " +
                    std::to_string(*s.rows) + " available rows");
  }
  if (!s.memoize) return s.oracle(n, k);
  const std::uint64_t key = (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(k);
  {
    std::shared_lock lock(s.mutex);
    auto it = s.memo.find(key);
    if (it != s.memo.end()) return it->second;
  }
  Rational v = s.oracle(n, k);
  std::unique_lock lock(s.mutex);
  return s.memo.try_emplace(key, std::move(v)).first->second;
}

DenseWindow Triangle::window(std::size_t n) const {
  DenseWindow w(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k <= i; ++k) w.set(i, k, entry(i, k));
  }
  return w;
}

Triangle triangle_compose(const Triangle& a, const Triangle& b) {
  std::optional<std::size_t> rows;
  if (a.rows() || b.rows()) {
    rows = std::min(a.rows().value_or(std::numeric_limits<std::size_t>::max()),
                    b.rows().value_or(std::numeric_limits<std::size_t>::max()));
  }
  return Triangle(
      Triangle::Backing::kComposition, "(" + a.description() + ")*(" + b.description() + ")",
      [a, b](std::size_t n, std::size_t k) {
        Rational sum;
        for (std::size_t j = k; j <= n; ++j) {
          const Rational anj = a.entry(n, j);
          if (!anj.is_zero()) sum += anj * b.entry(j, k);
        }
        return sum;
      },
      rows);
}

namespace {

void check_rows(const Triangle& a, std::size_t n) {
  if (a.rows() && *a.rows() < n) {
    throw Error(ErrorCode::kWindowMismatch,
                a.description() + " has " + std::to_string(*a.rows()) + " rows, window needs " +
                    std::to_string(n));
  }
}

}  // namespace

SeqWindow triangle_apply(const Triangle& a, const SeqWindow& x) {
  check_rows(a, x.size());
  std::vector<Rational> y(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) {
    for (std::size_t k = 0; k <= n; ++k) {
      if (!x[k].is_zero()) y[n] += a.entry(n, k) * x[k];
    }
  }
  return SeqWindow(std::move(y), x.provenance());
}

RealWindow triangle_apply(const Triangle& a, const RealWindow& x) {
  check_rows(a, x.size());
  const long prec = x[0].precision();
  std::vector<Real> y;
  y.reserve(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) {
    Real acc = Real::exact(Rational(0), prec);
    for (std::size_t k = 0; k <= n; ++k) acc = acc + Real::exact(a.entry(n, k), prec) * x[k];
    y.push_back(std::move(acc));
  }
  return RealWindow(std::move(y), x.provenance());
}

DenseWindow triangle_invert(const Triangle& a, std::size_t n) {
  check_rows(a, n);
  DenseWindow inv(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational d = a.entry(i, i);
    if (d.is_zero()) {
      throw Error(ErrorCode::kSingularDiagonal, "zero diagonal at row " + std::to_string(i));
    }
    const Rational dinv = d.inverse();
    inv.set(i, i, dinv);
    for (std::size_t k = 0; k < i; ++k) {
      Rational sum;
      for (std::size_t j = k; j < i; ++j) {
        const Rational aij = a.entry(i, j);
        if (!aij.is_zero()) sum += aij * inv.at(j, k);
      }
      inv.set(i, k, -sum * dinv);
    }
  }
  return inv;
}

SeqWindow triangle_solve(const Triangle& a, const SeqWindow& y) {
  check_rows(a, y.size());
  std::vector<Rational> x(y.size());
  for (std::size_t n = 0; n < y.size(); ++n) {
    const Rational d = a.entry(n, n);
    if (d.is_zero()) {
      throw Error(ErrorCode::kSingularDiagonal, "zero diagonal at row " + std::to_string(n));
    }
    Rational r = y[n];
    for (std::size_t k = 0; k < n; ++k) {
      if (!x[k].is_zero()) r -= a.entry(n, k) * x[k];
    }
    x[n] = r / d;
  }
  return SeqWindow(std::move(x), y.provenance());
}

}  // namespace fibla
