#include <cstdio>

#include "matring/acceptance.hpp"

int main() {
  using namespace matring::acceptance;
  int failed = 0;
  run_all({}, [&](const CriterionResult& r) {
    std::printf("%s\n", format_line(r).c_str());
    std::fflush(stdout);
    if (!r.skipped && !r.passed) ++failed;
  });
  std::printf("%d/%d criteria passed\n", kCriterionCount - failed, kCriterionCount);
  return failed == 0 ? 0 : 1;
}
