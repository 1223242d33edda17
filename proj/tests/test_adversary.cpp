#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <vector>

#include "sched/adversary.hpp"
#include "sched/model.hpp"

using namespace sched;

namespace {

// Minimal scheduler whose next() is a lambda-like table, for probing the
// referee's legality checks.
class Scripted : public OnlineMakespanScheduler {
 public:
  explicit Scripted(std::vector<std::optional<Commitment>> steps)
      : steps_(std::move(steps)) {}
  const char* name() const override { return "scripted"; }
  std::optional<Commitment> next(const GameView&) override {
    if (at_ >= steps_.size()) return std::nullopt;
    return steps_[at_++];
  }
  void reset() override { at_ = 0; }

 private:
  std::vector<std::optional<Commitment>> steps_;
  std::size_t at_ = 0;
};

Commitment make(std::int64_t id, int machine, double start, bool tested) {
  Commitment c;
  c.job_id = id;
  c.machine = machine;
  c.start = start;
  c.tested = tested;
  return c;
}

errc game_error(OnlineMakespanScheduler& s, int m) {
  try {
    run_adversary_game(s, m);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected Error");
  return errc::syntax_error;  // unreachable
}

}  // namespace

TEST_CASE("test-all baseline on two machines, full transcript") {
  auto s = make_baseline_scheduler(BaselineKind::test_all);
  GameResult g = run_adversary_game(*s, 2);
  CHECK(g.m == 2);
  CHECK(g.scheduler == "test-all");
  REQUIRE(g.transcript.size() == 5);
  double starts[] = {0, 0, 1, 1, 2};
  int machines[] = {0, 1, 0, 1, 0};
  for (int i = 0; i < 5; ++i) {
    CHECK(g.transcript[i].job_id == i);
    CHECK(g.transcript[i].start == starts[i]);
    CHECK(g.transcript[i].machine == machines[i]);
    CHECK(g.transcript[i].tested);
  }
  CHECK(g.j_prime == 4);
  CHECK(g.j_prime_tested);
  CHECK(g.transcript[4].revealed_p == 4.0);
  CHECK(g.transcript[4].end == 7.0);
  CHECK(g.transcript[0].revealed_p == 0.0);
  CHECK(g.alg_makespan == 7.0);
  CHECK(g.opt_makespan == 4.0);
  CHECK(g.ratio == 1.75);
}

TEST_CASE("never-test baseline on two machines") {
  auto s = make_baseline_scheduler(BaselineKind::never_test);
  GameResult g = run_adversary_game(*s, 2);
  CHECK(g.scheduler == "never-test");
  CHECK(g.j_prime == 2);  // first job of the second greedy round
  CHECK(!g.j_prime_tested);
  CHECK(g.transcript[2].start == 4.0);
  CHECK(g.transcript[2].end == 8.0);
  CHECK(g.alg_makespan == 12.0);
  CHECK(g.opt_makespan == 3.0);
  CHECK(g.ratio == 4.0);
}

TEST_CASE("test-all baseline on four machines") {
  auto s = make_baseline_scheduler(BaselineKind::test_all);
  GameResult g = run_adversary_game(*s, 4);
  CHECK(g.transcript.size() == 25);
  CHECK(g.j_prime == 24);
  CHECK(g.alg_makespan == 15.0);
  CHECK(g.opt_makespan == 8.0);
  CHECK(g.ratio == 1.875);
}

TEST_CASE("baseline ratios meet the lower-bound floor") {
  for (int m = 2; m <= 8; ++m) {
    auto yes = make_baseline_scheduler(BaselineKind::test_all);
    GameResult gy = run_adversary_game(*yes, m);
    CHECK(gy.ratio == (4.0 * m - 1) / (2.0 * m));
    CHECK(gy.ratio >= 2.0 - 1.0 / (2 * m) - 1e-12);

    auto no = make_baseline_scheduler(BaselineKind::never_test);
    GameResult gn = run_adversary_game(*no, m);
    CHECK(gn.ratio == 2.0 * m);
    CHECK(gn.ratio >= 2.0 - 1.0 / (2 * m) - 1e-12);
  }
}

TEST_CASE("replaying the game is deterministic") {
  auto s = make_baseline_scheduler(BaselineKind::test_all);
  GameResult a = run_adversary_game(*s, 3);
  GameResult b = run_adversary_game(*s, 3);  // reset() brings the state back
  CHECK(a.ratio == b.ratio);
  CHECK(a.j_prime == b.j_prime);
  REQUIRE(a.transcript.size() == b.transcript.size());
  for (std::size_t i = 0; i < a.transcript.size(); ++i) {
    CHECK(a.transcript[i].start == b.transcript[i].start);
    CHECK(a.transcript[i].end == b.transcript[i].end);
    CHECK(a.transcript[i].machine == b.transcript[i].machine);
  }
}

TEST_CASE("the referee rejects illegal play") {
  Scripted quits({std::nullopt});
  CHECK(game_error(quits, 2) == errc::incomplete_schedule);

  Scripted unknown({make(999, 0, 0, true)});
  CHECK(game_error(unknown, 2) == errc::scheduler_violation);

  Scripted dup({make(0, 0, 0, false), make(0, 1, 0, false)});
  CHECK(game_error(dup, 2) == errc::scheduler_violation);

  Scripted high_machine({make(0, 2, 0, true)});
  CHECK(game_error(high_machine, 2) == errc::scheduler_violation);

  Scripted negative_machine({make(0, -1, 0, true)});
  CHECK(game_error(negative_machine, 2) == errc::scheduler_violation);

  Scripted negative_start({make(0, 0, -0.5, true)});
  CHECK(game_error(negative_start, 2) == errc::scheduler_violation);

  // Job 0 runs untested over [0,4); job 1 lands inside it on the same machine.
  Scripted overlap({make(0, 0, 0, false), make(1, 0, 2, true)});
  CHECK(game_error(overlap, 2) == errc::scheduler_violation);
}

TEST_CASE("a legal hand-rolled scheduler is scored like any other") {
  // Pack both machines to 2 = 2(m-1) with tested jobs, then expose job 4
  // untested: makespan 2 + 4 against opt 3.
  Scripted plan({make(0, 0, 0, true), make(1, 1, 0, true), make(2, 0, 1, true),
                 make(3, 1, 1, true), make(4, 0, 2, false)});
  GameResult g = run_adversary_game(plan, 2);
  CHECK(g.j_prime == 4);
  CHECK(!g.j_prime_tested);
  CHECK(g.alg_makespan == 6.0);
  CHECK(g.opt_makespan == 3.0);
  CHECK(g.ratio == 2.0);
  CHECK(g.ratio >= 2.0 - 1.0 / 4 - 1e-12);
}
