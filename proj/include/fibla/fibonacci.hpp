#pragma once

#include <cstddef>
#include <deque>
#include <shared_mutex>

#include "fibla/rational.hpp"

namespace fibla {

/// Memoized Fibonacci numbers with f_0 = f_1 = 1.
///
/// Concurrent readers share a lock; extension takes it exclusively.
/// Returned references stay valid for the cache's lifetime because the
/// backing deque only grows at the back.
class FibCache {
 public:
  FibCache();

  const BigInt& get(std::size_t n);

  /// Process-wide instance.
  static FibCache& global();

 private:
  std::shared_mutex mutex_;
  std::deque<BigInt> values_;
};

/// n-th Fibonacci number from the global cache.
inline const BigInt& fib(std::size_t n) { return FibCache::global().get(n); }

/// f_n as a Rational.
inline Rational fib_q(std::size_t n) { return Rational(fib(n)); }

}  // namespace fibla
