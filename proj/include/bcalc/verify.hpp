#pragma once

#include <string>
#include <vector>

namespace bcalc {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::vector<std::string> details;
  double seconds = 0;
};

struct VerifyReport {
  std::vector<CriterionResult> results;
  bool all_passed() const;
};

/// combinatorics, pushforward, parametrix or all.
std::vector<int> suite_criteria(const std::string& suite);

/// Failures and exceptions are recorded in the result, never thrown.
CriterionResult run_criterion(int id);
VerifyReport run_suite(const std::string& suite);

}  // namespace bcalc
