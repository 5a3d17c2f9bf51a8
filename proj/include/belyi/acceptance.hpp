#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace belyi {

struct AcceptanceOptions {
  std::uint64_t seed = 7;
  bool corrupt_weight = false;  // test hook: damage one weight before the invariant check
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  long checks = 0;
  std::vector<std::string> failures;  // at most a few messages
  double time_limit = 0;              // seconds, 0 when unbounded
  double seconds = 0;                 // wall time, not part of the report
  bool within_limit() const { return time_limit <= 0 || seconds < time_limit; }
};

/// Criteria 1-9. Each result is self-contained; exceptions become failures.
std::vector<CriterionResult> run_criteria(const AcceptanceOptions& opt);
CriterionResult run_criterion(int id, const AcceptanceOptions& opt);
inline constexpr int kCriterionCount = 10;

}  // namespace belyi
