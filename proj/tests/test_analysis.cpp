#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sched/analysis.hpp"
#include "sched/generators.hpp"
#include "sched/json_io.hpp"
#include "sched/offline.hpp"
#include "sched/schedulers.hpp"

using namespace sched;

#define CHECK_NEAR(a, b) CHECK(std::abs((a) - (b)) <= 1e-12)

namespace {

const double kPhi = (1 + std::sqrt(5.0)) / 2;
const double kBetaStar =
    (1 + std::sqrt(5.0) + std::sqrt(2 * (7 + 5 * std::sqrt(5.0)))) / 4;

}  // namespace

TEST_CASE("contributions of the hard-pair run") {
  Schedule s = run_ae(gen_pair_family(0.1), {1, 1});
  ContributionMatrix m = contributions(s);
  CHECK(m.ids() == std::vector<std::int64_t>{0, 1});
  CHECK(m.at(0, 1) == 1.1);  // t_k fits before C_j
  CHECK(m.at(0, 0) == 2.4);
  CHECK_NEAR(m.at(1, 0), 2.2);
  CHECK_NEAR(m.at(1, 1), 2.2);
  CHECK_NEAR(m.column_sum(1), s.completion.at(1));
  CHECK_NEAR(m.column_sum(0), s.completion.at(0));
  CHECK_THROWS_AS(m.at(0, 7), std::out_of_range);
}

TEST_CASE("contributions handles single jobs and rejects bad schedules") {
  Instance one;
  one.jobs = {{0, 1, 1.4, 1.2}};
  Schedule s = run_ae(one, {1, 1});
  ContributionMatrix m = contributions(s);
  CHECK(m.at(0, 0) == s.completion.at(0));

  Schedule incomplete;
  incomplete.instance = gen_pair_family(0.1);
  try {
    contributions(incomplete);
    FAIL("expected Error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::incomplete_schedule);
  }

  Instance par = gen_pair_family(0.1);
  Schedule ps = run_pcp_parallel(par, 2, {1, 1});
  try {
    contributions(ps);
    FAIL("expected Error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::parallel_schedule_needs_segment_variant);
  }
}

TEST_CASE("column sums track completions on random runs") {
  for (long i = 0; i < 500; ++i) {
    Instance inst = oracles::sweep_instance(i, 17, 10);
    for (const Schedule& s :
         {run_ae(inst, {1.5, 1}), run_pcp(inst, {1, 2.5})}) {
      ContributionMatrix m = contributions(s);
      double tol = check_tolerance(inst);
      for (const Job& j : inst.jobs) {
        CHECK(std::abs(m.column_sum(j.id) - s.completion.at(j.id)) <= tol);
        for (const Job& k : inst.jobs) {
          CHECK(m.at(k.id, j.id) >= 0.0);
          double spent = s.tested.at(k.id) ? k.t + k.p : k.u;
          CHECK(m.at(k.id, j.id) <= spent + tol);
        }
      }
    }
  }
}

TEST_CASE("last_segment merges a contiguous test and execution") {
  Instance inst;
  inst.jobs = {{0, 1, 3, 1}, {1, 2, 1.5, 0.5}};
  Schedule s = run_pcp_parallel(inst, 2, {1, 1});
  SegmentInfo tested = last_segment(s, 0);
  CHECK(tested.start == 0.0);
  CHECK(tested.length == 2.0);
  SegmentInfo blind = last_segment(s, 1);
  CHECK(blind.start == 0.0);
  CHECK(blind.length == 1.5);
}

TEST_CASE("last_segment of a displaced execution is the execution alone") {
  Instance inst;
  inst.jobs = {{0, 1, 2, 0.4}, {1, 2, 1, 0.5}, {2, 2, 1.3, 0.2}};
  Schedule s = run_pcp_parallel(inst, 2, {1, 1});
  SegmentInfo seg = last_segment(s, 0);
  CHECK(seg.start == 1.0);
  CHECK_NEAR(seg.length, 0.4);
}

TEST_CASE("contributions_parallel measures before the last-segment start") {
  Instance inst;
  inst.jobs = {{0, 1, 3, 1}, {1, 2, 1.5, 0.5}};
  Schedule s = run_pcp_parallel(inst, 2, {1, 1});
  ContributionMatrix m = contributions_parallel(s);
  // The tested job's test and execution fuse into one segment from 0, so
  // nothing the untested job does lands before it.
  CHECK(m.at(1, 0) == 0.0);
  CHECK(m.at(0, 1) == 0.0);

  Instance displaced;
  displaced.jobs = {{0, 1, 2, 0.4}, {1, 2, 1, 0.5}, {2, 2, 1.3, 0.2}};
  Schedule d = run_pcp_parallel(displaced, 2, {1, 1});
  ContributionMatrix md = contributions_parallel(d);
  CHECK(md.at(1, 0) == 1.0);  // u=1 runs entirely before the exec at 1
  CHECK(md.at(2, 0) == 0.0);  // the displacing job starts exactly at 1

  // Single-machine reduction: cutoffs at the last-segment start.
  Schedule pcp = run_pcp(gen_pair_family(0.1), {kPhi, kBetaStar});
  ContributionMatrix mp = contributions_parallel(pcp);
  CHECK(mp.at(0, 1) == 1.3);
  CHECK(mp.at(1, 0) == 0.0);
}

TEST_CASE("check_pair_bounds evaluates the tested lemma on the hard pair") {
  Schedule s = run_ae(gen_pair_family(0.1), {1, 1});
  PairBoundReport report = check_pair_bounds(s, PairAlgo::ae, {1, 1});
  REQUIRE(report.entries.size() == 1);
  const PairBound& pb = report.entries[0];
  CHECK(pb.k_id == 0);
  CHECK(pb.j_id == 1);
  CHECK(pb.lemma == PairLemma::tested_ae);
  CHECK_NEAR(pb.lhs, 3.3);
  CHECK_NEAR(pb.rhs, 3.7);  // max{3.5, 2.2, 3.7}
  CHECK_NEAR(pb.slack, 0.4);
  CHECK(report.min_slack == pb.slack);
}

TEST_CASE("check_pair_bounds applies the untested lemma") {
  Schedule s = run_pcp(gen_pair_family(0.1), {kPhi, kBetaStar});
  PairBoundReport report = check_pair_bounds(s, PairAlgo::pcp, {kPhi, kBetaStar});
  REQUIRE(report.entries.size() == 1);
  CHECK(report.entries[0].lemma == PairLemma::untested);
  CHECK(report.entries[0].lhs == 1.3);
  CHECK_NEAR(report.entries[0].rhs, (1 + 1 / kBetaStar) * 1.3);
  CHECK(report.min_slack > 0);
}

TEST_CASE("check_pair_bounds emits both orientations for tied pairs") {
  Instance tie;
  tie.jobs = {{1, 0, 2, 2}, {5, 0, 2, 2}};
  Schedule s = run_pcp(tie, {1, 1});
  PairBoundReport report = check_pair_bounds(s, PairAlgo::pcp, {1, 1});
  REQUIRE(report.entries.size() == 2);
  CHECK(report.entries[0].k_id == 1);
  CHECK(report.entries[0].j_id == 5);
  CHECK(report.entries[1].k_id == 5);
  CHECK(report.entries[1].j_id == 1);
  CHECK(report.min_slack >= -check_tolerance(tie));
}

TEST_CASE("check_pair_bounds rejects mismatched parameters and machines") {
  Instance pair = gen_pair_family(0.1);
  Schedule s = run_ae(pair, {1, 1});
  try {
    check_pair_bounds(s, PairAlgo::ae, {10, 1});
    FAIL("expected Error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::algorithm_mismatch);
  }
  Schedule ps = run_pcp_parallel(pair, 2, {1, 1});
  try {
    check_pair_bounds(ps, PairAlgo::pcp, {1, 1});
    FAIL("expected Error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::machine_count_unsupported);
  }
}

TEST_CASE("expr_ae_bound term-by-term") {
  CHECK(std::abs(expr_ae_bound(std::sqrt(2.0), std::sqrt(2.0)) -
                 (1 + std::sqrt(2.0))) <= 1e-9);
  CHECK(expr_ae_bound(1, 1) == 3.0);
  CHECK(expr_ae_bound(2, 1) == 4.0);  // max{4, 2.5, 2, 2, 2}
}

TEST_CASE("expr_pcp_bound term-by-term") {
  CHECK(expr_pcp_bound(1, 1) == 4.0);  // max{2, 4, 1, 2, 3}
  CHECK(std::abs(expr_pcp_bound(std::sqrt(2.0), std::sqrt(2.0)) -
                 (1.5 + std::sqrt(2.0))) <= 1e-9);
  CHECK(std::abs(expr_pcp_bound(kPhi, kBetaStar) - 2.316513) <= 1e-5);
}

TEST_CASE("expr_parallel_bound reproduces the appendix values") {
  CHECK(std::abs(expr_parallel_bound(1e9, kPhi, kBetaStar, false) - 2.77630) <=
        1e-3);
  CHECK(std::abs(expr_parallel_bound(1e9, kPhi, 1.0, true) - 2.73606) <= 1e-3);
  CHECK(std::abs(expr_parallel_bound(1, 2.0, 1.0, true) - 2.0) <= 1e-4);
  CHECK(std::abs(expr_parallel_bound(2, std::sqrt(3.0), 1.0, true) - 2.48206) <=
        1e-4);
  // m=1 variable case collapses to the single-machine theorem bound.
  CHECK(expr_parallel_bound(1, kPhi, kBetaStar, false) ==
        expr_pcp_bound(kPhi, kBetaStar));
}

TEST_CASE("randomized per-ratio expressions meet at the equalizer") {
  double p = test_probability(2.0, 2.0);
  CHECK(p == 6.0 / 7.0);
  CHECK_NEAR(rand_expr_untested(2.0, 2.0, p), 15.0 / 7.0);
  CHECK_NEAR(rand_expr_tested(2.0, 2.0, p), 15.0 / 7.0);
}

TEST_CASE("rand_worst_ratio finds the beta=2 optimum") {
  RandWorstRatio w = rand_worst_ratio(2.0);
  double closed_form = 3 * (7 + 3 * std::sqrt(6.0)) / 20;
  CHECK(std::abs(w.ratio - closed_form) <= 1e-9);
  CHECK(std::abs(w.ratio - 2.152271) <= 1e-5);
  CHECK(std::abs(w.r - 1.816497) <= 1e-3);
  CHECK(w.ratio >= 1.5);  // endpoint value at r=1
}

TEST_CASE("rand_worst_ratio across beta") {
  // beta=1: the equalized curve 2 + 2(r-1)/(r^2-r+1) peaks at r=2.
  RandWorstRatio one = rand_worst_ratio(1.0);
  CHECK(std::abs(one.ratio - 8.0 / 3.0) <= 1e-6);
  CHECK(std::abs(one.r - 2.0) <= 1e-3);
  // Large beta: the probability clamps to 1 early and the tested expression
  // plateaus at max{2, beta, 1+1/beta}.
  CHECK(std::abs(rand_worst_ratio(4.0).ratio - 4.0) <= 1e-6);
  double b = 2 + std::sqrt(2.0 / 3.0);
  CHECK(std::abs(rand_worst_ratio(b).ratio - b) <= 1e-6);
  CHECK_THROWS_AS(rand_worst_ratio(0.0), std::invalid_argument);
}

TEST_CASE("rand_expected_cost_exact enumerates outcomes") {
  Instance one;
  one.jobs = {{0, 1, 2, 0.5}};
  double ev = rand_expected_cost_exact(one, 2.0);
  CHECK_NEAR(ev, (6.0 / 7.0) * 1.5 + (1.0 / 7.0) * 2.0);

  Instance sure;  // r < 1 everywhere: the single no-test outcome
  sure.jobs = {{0, 5, 2, 1}, {1, 4, 3.5, 0}};
  std::map<std::int64_t, bool> none{{0, false}, {1, false}};
  CHECK(rand_expected_cost_exact(sure, 2.0) ==
        schedule_cost(run_pcp_forced(sure, 2.0, none),
                      Objective::total_completion));

  Instance pair = gen_pair_family(0.1);
  double p0 = test_probability(1.3 / 1.1, 2.0);
  double p1 = test_probability(1.4, 2.0);
  double manual = 0;
  for (int mask = 0; mask < 4; ++mask) {
    bool t0 = mask & 1, t1 = mask & 2;
    double w = (t0 ? p0 : 1 - p0) * (t1 ? p1 : 1 - p1);
    std::map<std::int64_t, bool> forced{{0, t0}, {1, t1}};
    manual += w * schedule_cost(run_pcp_forced(pair, 2.0, forced),
                                Objective::total_completion);
  }
  CHECK_NEAR(rand_expected_cost_exact(pair, 2.0), manual);

  Instance many;
  for (int i = 0; i < 21; ++i) many.jobs.push_back({i, 1, 2, 1});
  try {
    rand_expected_cost_exact(many, 2.0);
    FAIL("expected Error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::too_many_random_jobs);
  }

  Instance multi = gen_pair_family(0.1);
  multi.m = 2;
  CHECK_THROWS_AS(rand_expected_cost_exact(multi, 2.0), Error);
}

TEST_CASE("empirical_ratio on the hard pair") {
  Instance pair = gen_pair_family(0.1);
  RatioReport ae = empirical_ratio({AlgoKind::ae, 1, 1, 1, 0}, pair);
  CHECK(ae.algo == "ae");
  CHECK_NEAR(ae.ratio, 1.975);
  CHECK(ae.bound == 3.0);
  CHECK(ae.opt_cost == 4.0);
  CHECK(ae.fingerprint == instance_fingerprint(pair));

  RatioReport pcp =
      empirical_ratio({AlgoKind::pcp, kPhi, kBetaStar, 1, 0}, pair);
  CHECK(pcp.ratio == 1.0);
  CHECK(std::abs(pcp.bound - 2.316513) <= 1e-5);
}

TEST_CASE("empirical_ratio degenerate convention") {
  Instance zero;
  zero.jobs = {{0, 5, 0, 0}};
  RatioReport r = empirical_ratio({AlgoKind::pcp, 1, 1, 1, 0}, zero);
  CHECK(r.ratio == 1.0);
  CHECK(r.alg_cost == 0.0);
  CHECK(r.opt_cost == 0.0);
}

TEST_CASE("algo_name spells every kind") {
  CHECK(std::string(algo_name(AlgoKind::ae)) == "ae");
  CHECK(std::string(algo_name(AlgoKind::pcp)) == "pcp");
  CHECK(std::string(algo_name(AlgoKind::rand_pcp)) == "rand-pcp");
  CHECK(std::string(algo_name(AlgoKind::pcp_parallel)) == "pcp-parallel");
  CHECK(std::string(algo_name(AlgoKind::uniform_parallel)) ==
        "uniform-parallel");
}

TEST_CASE("worst_case_search starts from the hard pair and is deterministic") {
  AlgoSpec spec{AlgoKind::ae, 1, 1, 1, 0};
  SearchResult a = worst_case_search(spec, 2, 10000, 1);
  CHECK(a.report.ratio >= 1.9749999999999999);
  CHECK(a.report.ratio <= a.report.bound + 1e-9);
  CHECK(a.evaluations >= 1);
  CHECK(a.evaluations <= 10000);
  SearchResult b = worst_case_search(spec, 2, 10000, 1);
  CHECK(a.report.ratio == b.report.ratio);
  CHECK(instance_fingerprint(a.instance) == instance_fingerprint(b.instance));

  AlgoSpec pcp{AlgoKind::pcp, kPhi, kBetaStar, 1, 0};
  SearchResult c = worst_case_search(pcp, 3, 3000, 5);
  CHECK(c.report.ratio <= c.report.bound + 1e-9);
  CHECK_THROWS_AS(worst_case_search(spec, 2, 0, 1), std::invalid_argument);
}

TEST_CASE("check_gong_property holds for list schedules and spots violations") {
  for (long i = 0; i < 100; ++i) {
    Instance inst = oracles::sweep_instance(i, 53, 8);
    Schedule s1 = run_pcp(inst, {1, 1});
    CHECK(check_gong_property(s1, s1.list_order));
    for (int m : {2, 3}) {
      Schedule s = run_pcp_parallel(inst, m, {1, 1});
      CHECK(check_gong_property(s, s.list_order));
    }
  }

  Schedule bad;
  bad.instance.jobs = {{0, 0, 5, 5}, {1, 0, 5, 5}};
  bad.machine_count = 2;
  bad.placed = {
      {{0, TaskKind::exec_untested, 1, 5}, 0, 5, 6},
      {{1, TaskKind::exec_untested, 1, 5}, 1, 0, 1},
  };
  bad.completion = {{0, 6.0}, {1, 1.0}};
  bad.tested = {{0, false}, {1, false}};
  bad.list_order = {0, 1};
  CHECK(!check_gong_property(bad, bad.list_order));
  CHECK(!check_gong_property(bad, {0}));  // size mismatch
}

TEST_CASE("run_algo dispatches every kind") {
  Instance pair = gen_pair_family(0.1);
  CHECK(schedule_cost(run_algo({AlgoKind::ae, 1, 1, 1, 0}, pair),
                      Objective::total_completion) ==
        schedule_cost(run_ae(pair, {1, 1}), Objective::total_completion));
  CHECK(run_algo({AlgoKind::rand_pcp, 1, 2, 1, 9}, pair).placed.size() >= 2);
  Instance uni;
  uni.jobs = {{0, 1, 1.5, 0.5}, {1, 1, 3, 2}};
  Schedule u = run_algo({AlgoKind::uniform_parallel, 2, 1, 1, 0}, uni);
  CHECK(schedule_cost(u, Objective::total_completion) == 6.0);
  Schedule p = run_algo({AlgoKind::pcp_parallel, 1, 1, 2, 0}, pair);
  CHECK(p.machine_count == 2);
}
