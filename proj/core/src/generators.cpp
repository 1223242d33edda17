#include "sched/generators.hpp"

#include <stdexcept>

#include "sched/rng.hpp"

namespace sched {

Instance gen_random_instance(const GenConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("gen_random_instance: n must be >= 1");
  if (!(cfg.r_max > 0))
    throw std::invalid_argument("gen_random_instance: r_max must be > 0");
  Rng rng(cfg.seed);
  Instance inst;
  inst.m = 1;
  inst.jobs.reserve(cfg.n);
  for (int i = 0; i < cfg.n; ++i) {
    Job j;
    j.id = i;
    j.t = rng.next_unit_positive();
    j.u = j.t * (cfg.r_max * rng.next_unit_positive());
    j.p = j.u * rng.next_unit_closed();
    inst.jobs.push_back(j);
  }
  return inst;
}

Instance gen_pair_family(double eps) {
  if (!(eps > 0)) throw std::invalid_argument("gen_pair_family: eps must be > 0");
  Instance inst;
  inst.m = 1;
  inst.jobs = {
      {0, 1 + eps, 1 + 3 * eps, 1 + 3 * eps},
      {1, 1.0, 1 + 4 * eps, 1 + 2 * eps},
  };
  return inst;
}

Instance gen_adversary_jobs(int m) {
  if (m < 2) fail(errc::bad_machine_count, "adversary game needs m >= 2");
  Instance inst;
  inst.m = m;
  int n = 2 * m * (m - 1) + 1;
  inst.jobs.reserve(n);
  for (int i = 0; i < n; ++i)
    inst.jobs.push_back({i, 1.0, 2.0 * m, 0.0});
  return inst;
}

}  // namespace sched
