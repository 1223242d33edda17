#pragma once

#include <cstdint>
#include <string>

#include "sched/analysis.hpp"

namespace sched::cli {

struct VerifyConfig {
  AlgoSpec spec;
  int n = 8;
  long trials = 1000;
  std::uint64_t seed = 0;
};

struct VerifyOutcome {
  long trials = 0;
  double max_ratio = 0;  // of the configured algorithm
  double bound = 0;
  double min_slack = 0;  // over all pair-bound checks
  bool failed = false;
  long failed_trial = -1;
  std::string failure;
  std::string offending_instance;  // canonical JSON
};

// Battery of invariant checks over seeded random instances: testing rule,
// gapless timelines, per-job time bound, contribution column sums, pair
// lemma slacks, theorem-bound soundness (single, parallel, randomized
// expectation on a subsample), Gong property, single-machine reduction,
// right-merge monotonicity, and the adversary ratio floor. Stops at the
// first violation.
VerifyOutcome verify_battery(const VerifyConfig& cfg);

}  // namespace sched::cli
