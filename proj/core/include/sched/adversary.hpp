#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sched/model.hpp"

namespace sched {

// One non-preemptive commitment: the scheduler fixes job, machine, start and
// whether to test before the processing time is revealed. A tested job's
// execution follows its test immediately on the same machine, so the realized
// block is [start, start+1+p]; an untested job occupies [start, start+u].
struct Commitment {
  std::int64_t job_id = 0;
  int machine = 0;
  double start = 0;
  bool tested = false;
  double revealed_p = 0;  // filled in by the game
  double end = 0;         // filled in by the game
};

struct GameView {
  const Instance* jobs;
  int m;
  const std::vector<Commitment>* history;  // realized, in commitment order
};

class OnlineMakespanScheduler {
 public:
  virtual ~OnlineMakespanScheduler() = default;
  virtual const char* name() const = 0;
  // Next commitment, or nullopt to (illegally) stop early.
  virtual std::optional<Commitment> next(const GameView& view) = 0;
  virtual void reset() {}
};

enum class BaselineKind { test_all, never_test };

// Greedy baselines: commit jobs in id order to the least-loaded machine
// (lowest index on ties) at that machine's current load; one always tests,
// the other never does.
std::unique_ptr<OnlineMakespanScheduler> make_baseline_scheduler(BaselineKind kind);

struct GameResult {
  int m;
  std::string scheduler;
  std::int64_t j_prime;  // the job the adversary singles out
  bool j_prime_tested;
  double alg_makespan;
  double opt_makespan;  // 2m when j' was tested, 2m-1 otherwise
  double ratio;
  std::vector<Commitment> transcript;
};

// Adaptive lower-bound game on the 2m(m-1)+1 unit-test jobs: every test
// reveals p=0 until the first commitment starting at or after 2(m-1); that
// job becomes j' and reveals p=2m if tested (otherwise it runs for u=2m).
// Guarantees ratio >= 2 - 1/(2m) against any legal scheduler.
GameResult run_adversary_game(OnlineMakespanScheduler& scheduler, int m);

}  // namespace sched
