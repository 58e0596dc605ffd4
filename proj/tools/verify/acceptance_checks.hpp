#pragma once

// Runners for the acceptance criteria, shared by the acceptance binary and
// `relim verify-paper`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "relim/problem.hpp"

namespace relim::verify {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  bool skipped = false;
  /// One line per checked case or failure, in evaluation order.
  std::vector<std::string> details;
  double seconds = 0;
};

struct SuiteOptions {
  /// Upper bound on the degree of every engine run. Criteria whose whole
  /// range lies above it are skipped.
  int delta_max = 8;
  int trees = 100;
  int max_tree_nodes = 300;
  std::uint64_t seed = 1;
  unsigned threads = 4;
  /// Show every case, not only failures and summaries.
  bool verbose = false;
};

/// Seeded random problem with `labels` labels at degree `delta`.
Problem random_problem(std::uint64_t seed, int labels, int delta);

CriterionResult check_re_oracle(const SuiteOptions& options);
CriterionResult check_re_family(const SuiteOptions& options);
CriterionResult check_speedup(const SuiteOptions& options);
CriterionResult check_zero_round(const SuiteOptions& options);
CriterionResult check_failure_bound(const SuiteOptions& options);
CriterionResult check_transforms(const SuiteOptions& options);
CriterionResult check_sequence(const SuiteOptions& options);
CriterionResult check_determinism(const SuiteOptions& options);

/// Criteria 1..8 in order. `on_result` is called as each one finishes.
std::vector<CriterionResult> run_suite(
    const SuiteOptions& options,
    const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS  3  speedup ... (12.3 s)" followed by indented detail lines.
std::string format_result(const CriterionResult& result, bool with_details);

}  // namespace relim::verify
