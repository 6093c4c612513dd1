#include "bcalc/verify.hpp"

#include <cstdio>

int main() {
  const auto report = bcalc::run_suite("all");
  for (const auto& r : report.results) {
    std::printf("criterion %2d %-40s %s (%.2fs)\n", r.id, r.name.c_str(), r.passed ? "PASS" : "FAIL", r.seconds);
    for (const auto& line : r.details) std::printf("    %s\n", line.c_str());
  }
  return report.all_passed() ? 0 : 1;
}
