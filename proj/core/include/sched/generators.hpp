#pragma once

#include <cstdint>

#include "sched/model.hpp"

namespace sched {

enum class DistKind { uniform };

struct GenConfig {
  int n = 1;
  double r_max = 3.0;  // cap on u/t
  std::uint64_t seed = 0;
  DistKind dist = DistKind::uniform;
};

// n jobs with t ~ U(0,1], u = t * U(0, r_max], p ~ U[0,u].
// Pure function of cfg: identical seeds give bitwise-identical instances.
Instance gen_random_instance(const GenConfig& cfg);

// Two-job family with jobs k=(1+eps, 1+3eps, 1+3eps) id 0 and
// j=(1, 1+4eps, 1+2eps) id 1; the classic hard pair for testing-threshold
// algorithms.
Instance gen_pair_family(double eps);

// 2m(m-1)+1 identical jobs (t=1, u=2m) for the makespan adversary game.
// The stored p values are placeholders; the adversary reveals them adaptively.
Instance gen_adversary_jobs(int m);

}  // namespace sched
