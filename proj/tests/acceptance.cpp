#include <cstdio>

#include "fibla/golden.hpp"

// One line per acceptance criterion, in order.
int main() {
  const auto& ids = fibla::golden_ids();
  int failed = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto r = fibla::run_golden(ids[i]);
    std::printf("%s %2zu %s: %s\n", r.passed ? "PASS" : "FAIL", i + 1, r.id.c_str(), r.identity.c_str());
    for (const auto& f : r.failures) std::printf("       %s\n", f.c_str());
    failed += !r.passed;
  }
  std::printf("%zu/%zu criteria passed\n", ids.size() - failed, ids.size());
  return failed == 0 ? 0 : 1;
}
