#pragma once

#include <cstdint>
#include <vector>

#include "sched/model.hpp"

namespace sched {

// Processing time of a job in the clairvoyant offline schedule: the offline
// scheduler tests exactly when t + p beats running blind at u.
double opt_time(const Job& j);

// Offline execution order: ascending (opt_time, id).
struct OptOrder {
  std::vector<std::int64_t> ids;
  std::vector<double> times;  // opt_time aligned with ids
};

OptOrder opt_order(const Instance& inst);

// Minimum total completion time on one machine: SPT over opt_time.
double opt_cost_single(const Instance& inst);

// Minimum total completion time on m identical machines: SPT list scheduling
// of the opt_time values (exact for this objective).
double opt_cost_parallel(const Instance& inst, int m);

// Closed-form lower bound on the parallel optimum:
//   max{ sum q, (1/m) * sum_j j*q_j + (1/2 - 1/(2m)) * sum q }
// with q the opt_time values sorted non-increasing and j 1-based. Equals the
// single-machine optimum at m=1.
double opt_parallel_lower_bound(const Instance& inst, int m);

}  // namespace sched
