#pragma once
// The acceptance-criteria registry behind `verify <suite>` and the dedicated
// acceptance binary.  Every criterion is a pure function bundling named
// sub-checks with bounds pinned in code; a criterion passes when all of its
// sub-checks pass and it finishes inside its runtime budget.  The quick suite
// covers the fast single-interval criteria; the full suite runs everything,
// including the Cantor-set constructions and the determinism rerun.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace finitegap {

// Default sampling seed for the randomized property checks.  `--seed` swaps
// the sampled points only; it never changes what a run reports.
inline constexpr std::uint64_t kDefaultSeed = 0x7a5c3d1fu;

struct CriterionCheck {
  std::string label;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;  // value <= bound
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::vector<CriterionCheck> checks;
  double seconds = 0.0;  // wall time; shown in the table, never serialized
  double budget = 0.0;   // runtime budget in seconds; 0 = unbudgeted
  bool pass = false;

  // The check that came closest to (or past) its bound; table display.
  const CriterionCheck* worst() const;
};

// Criterion ids for a suite name ("quick" or "full"); anything else throws
// UsageError (exit 64).
std::vector<int> suite_criteria(const std::string& suite);

// Runs one criterion (ids 1..11).  Criterion 11 replays the quick suite
// twice in-process and compares the serialized reports byte for byte.
CriterionResult run_criterion(int id, std::uint64_t seed);

// Runs a whole suite; `threads` > 1 distributes criteria over a small worker
// pool (results are ordered by id either way, so output bytes do not depend
// on scheduling).  For the full suite, the total-elapsed check of criterion
// 11 is filled in after all criteria finish.
std::vector<CriterionResult> run_suite(const std::string& suite,
                                       std::uint64_t seed, int threads = 1);

// Deterministic JSON document of the results (no timing fields).
nlohmann::ordered_json verify_report(const std::vector<CriterionResult>& results,
                                     const std::string& suite,
                                     std::uint64_t seed);

// Fixed-width table: one line per criterion with the worst sub-check, its
// measured value, the bound, elapsed time and the pass flag.
std::string format_verify_table(const std::vector<CriterionResult>& results);

}  // namespace finitegap
