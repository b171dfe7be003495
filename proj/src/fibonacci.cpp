#include "fibla/fibonacci.hpp"

#include <mutex>

namespace fibla {

FibCache::FibCache() {
  values_.emplace_back(1);
  values_.emplace_back(1);
}

const BigInt& FibCache::get(std::size_t n) {
  {
    std::shared_lock lock(mutex_);
    if (n < values_.size()) return values_[n];
  }
  std::unique_lock lock(mutex_);
  while (values_.size() <= n) {
    const std::size_t m = values_.size();
    values_.push_back(values_[m - 1] + values_[m - 2]);
  }
  return values_[n];
}

FibCache& FibCache::global() {
  static FibCache cache;
  return cache;
}

}  // namespace fibla
