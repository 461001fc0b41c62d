#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rootwalk/io.hpp"

namespace acceptance {

using rootwalk::io::Json;

struct SuiteOptions {
  /// "full" runs every criterion at its pinned size; "quick" shrinks path
  /// counts for smoke and determinism runs (pass/fail there is not meaningful).
  std::string profile = "full";
  std::uint64_t seed = 20240611;
  int workers = 1;
  std::vector<int> only;  ///< empty means all
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;  ///< one-line summary of the deciding numbers
  Json metrics;        ///< deterministic numbers, no timings
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

std::vector<CriterionResult> run_suite(const SuiteOptions& options);
CriterionResult run_criterion(int id, const SuiteOptions& options);

/// Deterministic report (no timings) used for byte comparisons.
Json report(const std::vector<CriterionResult>& results, const SuiteOptions& options);

/// "PASS  3 brute-force oracle ... (1.2 s)"
std::string format_line(const CriterionResult& r);

inline constexpr int kCriteria = 12;

}  // namespace acceptance
