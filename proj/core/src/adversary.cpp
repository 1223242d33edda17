#include "sched/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "sched/generators.hpp"

namespace sched {

namespace {

class GreedyBaseline : public OnlineMakespanScheduler {
 public:
  explicit GreedyBaseline(bool test) : test_(test) {}

  const char* name() const override { return test_ ? "test-all" : "never-test"; }

  std::optional<Commitment> next(const GameView& view) override {
    std::size_t k = view.history->size();
    if (k >= view.jobs->jobs.size()) return std::nullopt;

    std::vector<double> load(std::size_t(view.m), 0.0);
    for (const Commitment& c : *view.history)
      load[std::size_t(c.machine)] = std::max(load[std::size_t(c.machine)], c.end);
    int best = 0;
    for (int i = 1; i < view.m; ++i)
      if (load[std::size_t(i)] < load[std::size_t(best)]) best = i;

    Commitment c;
    c.job_id = view.jobs->jobs[k].id;
    c.machine = best;
    c.start = load[std::size_t(best)];
    c.tested = test_;
    return c;
  }

 private:
  bool test_;
};

}  // namespace

std::unique_ptr<OnlineMakespanScheduler> make_baseline_scheduler(
    BaselineKind kind) {
  return std::make_unique<GreedyBaseline>(kind == BaselineKind::test_all);
}

GameResult run_adversary_game(OnlineMakespanScheduler& scheduler, int m) {
  Instance inst = gen_adversary_jobs(m);
  const double threshold = 2.0 * (m - 1);
  scheduler.reset();

  GameResult result;
  result.m = m;
  result.scheduler = scheduler.name();
  result.j_prime = -1;

  std::set<std::int64_t> committed;
  while (committed.size() < inst.jobs.size()) {
    GameView view{&inst, m, &result.transcript};
    std::optional<Commitment> next = scheduler.next(view);
    if (!next)
      fail(errc::incomplete_schedule,
           std::to_string(inst.jobs.size() - committed.size()) +
               " jobs left uncommitted");
    Commitment c = *next;

    const Job* job = inst.find(c.job_id);
    if (!job)
      fail(errc::scheduler_violation,
           "commitment names unknown job " + std::to_string(c.job_id));
    if (!committed.insert(c.job_id).second)
      fail(errc::scheduler_violation,
           "job " + std::to_string(c.job_id) + " committed twice");
    if (c.machine < 0 || c.machine >= m)
      fail(errc::scheduler_violation,
           "machine index " + std::to_string(c.machine) + " out of range");
    if (!(std::isfinite(c.start) && c.start >= 0))
      fail(errc::scheduler_violation, "start time must be finite and >= 0");

    if (result.j_prime < 0 && c.start >= threshold) {
      result.j_prime = c.job_id;
      result.j_prime_tested = c.tested;
      c.revealed_p = c.tested ? 2.0 * m : 0.0;
    } else {
      c.revealed_p = 0.0;
    }
    c.end = c.start + (c.tested ? job->t + c.revealed_p : job->u);

    for (const Commitment& prev : result.transcript)
      if (prev.machine == c.machine && c.start < prev.end && prev.start < c.end)
        fail(errc::scheduler_violation,
             "jobs " + std::to_string(prev.job_id) + " and " +
                 std::to_string(c.job_id) + " overlap on machine " +
                 std::to_string(c.machine));
    result.transcript.push_back(c);
  }

  // Pigeonhole: 2m(m-1)+1 blocks of length >= 1 cannot all start inside
  // [0, 2(m-1)) on m machines, so a complete legal schedule always yields j'.
  if (result.j_prime < 0)
    throw std::logic_error("no commitment at or after the threshold");

  result.alg_makespan = 0;
  for (const Commitment& c : result.transcript)
    result.alg_makespan = std::max(result.alg_makespan, c.end);
  result.opt_makespan = result.j_prime_tested ? 2.0 * m : 2.0 * m - 1.0;
  result.ratio = result.alg_makespan / result.opt_makespan;
  return result;
}

}  // namespace sched
