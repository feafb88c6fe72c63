#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccopt::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // first failure, or a summary of what was checked
  double seconds = 0.0;
};

int num_criteria();

/// Runs one criterion of the verification suite (1-based id).
CriterionResult run_criterion(int id);

/// Runs the given criteria (all when empty), printing one PASS/FAIL line
/// each. Returns the number of failures.
int run(const std::vector<int>& ids, std::ostream& out);

}  // namespace ccopt::acceptance
