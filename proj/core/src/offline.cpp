#include "sched/offline.hpp"

#include <algorithm>
#include <numeric>

namespace sched {

double opt_time(const Job& j) { return std::min(j.u, j.t + j.p); }

OptOrder opt_order(const Instance& inst) {
  require_valid(inst);
  std::vector<std::size_t> idx(inst.jobs.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<double> times(inst.jobs.size());
  for (std::size_t i = 0; i < inst.jobs.size(); ++i)
    times[i] = opt_time(inst.jobs[i]);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (times[a] != times[b]) return times[a] < times[b];
    return inst.jobs[a].id < inst.jobs[b].id;
  });
  OptOrder out;
  out.ids.reserve(idx.size());
  out.times.reserve(idx.size());
  for (std::size_t i : idx) {
    out.ids.push_back(inst.jobs[i].id);
    out.times.push_back(times[i]);
  }
  return out;
}

double opt_cost_single(const Instance& inst) {
  OptOrder ord = opt_order(inst);
  double clock = 0, total = 0;
  for (double q : ord.times) {
    clock += q;
    total += clock;
  }
  return total;
}

double opt_cost_parallel(const Instance& inst, int m) {
  if (m < 1) fail(errc::bad_machine_count, "m must be >= 1");
  OptOrder ord = opt_order(inst);
  std::vector<double> free_at(m, 0.0);
  double total = 0;
  for (double q : ord.times) {
    std::size_t mi = 0;
    for (std::size_t i = 1; i < free_at.size(); ++i)
      if (free_at[i] < free_at[mi]) mi = i;
    free_at[mi] += q;
    total += free_at[mi];
  }
  return total;
}

double opt_parallel_lower_bound(const Instance& inst, int m) {
  if (m < 1) fail(errc::bad_machine_count, "m must be >= 1");
  OptOrder ord = opt_order(inst);
  std::vector<double> q = ord.times;
  std::sort(q.begin(), q.end(), std::greater<>());
  double sum = 0, weighted = 0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    sum += q[j];
    weighted += double(j + 1) * q[j];
  }
  double positional = weighted / m + (0.5 - 0.5 / m) * sum;
  return std::max(sum, positional);
}

}  // namespace sched
