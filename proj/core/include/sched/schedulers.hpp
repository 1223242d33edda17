#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "sched/model.hpp"

namespace sched {

// Threshold/weight parameters for the deterministic schedulers:
// a job is tested iff u >= alpha * t; a test enters the queue with weight
// beta * t.
struct AlgoParams {
  double alpha = 1.0;  // >= 1
  double beta = 1.0;   // > 0
};

void require_params(const AlgoParams& params);

// Pending tasks ordered by (weight, job id); at most one task per job.
class TaskQueue {
 public:
  void insert(const Task& task);
  Task extract_min();
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  std::vector<Task> snapshot() const;  // ascending queue order

 private:
  struct ByWeightThenId {
    bool operator()(const Task& a, const Task& b) const {
      if (a.weight != b.weight) return a.weight < b.weight;
      return a.job_id < b.job_id;
    }
  };
  std::set<Task, ByWeightThenId> entries_;
  std::set<std::int64_t> pending_ids_;
};

struct PlacedTask {
  Task task;
  int machine = 0;
  double start = 0;
  double end = 0;
};

struct Schedule {
  Instance instance;
  int machine_count = 1;
  std::vector<PlacedTask> placed;             // in placement order
  std::map<std::int64_t, double> completion;  // job id -> completion time
  std::map<std::int64_t, bool> tested;        // job id -> tested by the run
  std::vector<int> list_order;                // indices into placed, priority order
};

enum class Objective { total_completion, makespan };

double schedule_cost(const Schedule& s, Objective obj);

// Initial queue contents under the testing rule: Test(weight beta*t) for jobs
// with u >= alpha*t, ExecUntested(weight u) otherwise.
TaskQueue initial_queue(const Instance& inst, const AlgoParams& params);

// Single-machine queue execution; a tested job re-enters as Exec with weight
// p (run_ae) or t + p (run_pcp).
Schedule run_ae(const Instance& inst, const AlgoParams& params);
Schedule run_pcp(const Instance& inst, const AlgoParams& params);

// Single-machine PCP-style run with an explicit tested set (the randomized
// algorithm and its exact expectation share this path).
Schedule run_pcp_forced(const Instance& inst, double beta,
                        const std::map<std::int64_t, bool>& tested);

// Testing probability for ratio r = u/t. Zero below r=1, one above r=3, the
// equalizer formula clamped to [0,1] in between. r = +inf (t = 0) means a
// test is free, so the job is always tested.
double test_probability(double r, double beta);

struct RandDecision {
  std::int64_t job_id;
  double r;  // u/t, +inf when t == 0
  double prob;
  bool tested;
};

// Per-job coin flips drawn from (seed, job id) only, so the outcome does not
// depend on iteration order.
std::vector<RandDecision> rand_decisions(const Instance& inst, double beta,
                                         std::uint64_t seed);

Schedule run_rand_pcp(const Instance& inst, double beta, std::uint64_t seed);

// Event-driven list scheduling on m identical machines with PCP weights.
// An Exec task becomes available when its test completes; it prefers the
// machine that ran the test, then just-freed machines, then the lowest index.
// Reduces exactly to run_pcp at m=1. The produced schedule records the
// priority list order used (Schedule::list_order).
Schedule run_pcp_parallel(const Instance& inst, int m, const AlgoParams& params);

// Parallel algorithm for instances with identical testing times; the weight
// parameter disappears. Phase-major list: untested jobs by (u, id), then all
// tests by id, then revealed executions by (p, id). Phases interleave only
// through machine availability.
Schedule run_uniform_parallel(const Instance& inst, int m, double alpha);

}  // namespace sched
