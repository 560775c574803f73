#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace bound_atlas {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CriterionResult {
  int number = 0;
  std::string title;
  bool pass = false;
  double seconds = 0.0;
  std::vector<CheckResult> checks;
};

struct ReproOptions {
  int workers = 0;               // 0 = default_worker_count()
  std::set<int> only;            // empty = all criteria
  std::function<void(const std::string&)> log;  // optional live output
};

/// Run the acceptance checks (criteria 1..10) and return per-criterion
/// results. Sample counts and tolerances are fixed; the heavy runs use the
/// worker pool.
std::vector<CriterionResult> run_acceptance(const ReproOptions& opt = {});

/// One "criterion N PASS/FAIL title (x.x s)" line per criterion.
std::string format_acceptance(const std::vector<CriterionResult>& results,
                              bool with_checks = true);

}  // namespace bound_atlas
