#include <benchmark/benchmark.h>

#include "sched/adversary.hpp"
#include "sched/analysis.hpp"
#include "sched/generators.hpp"
#include "sched/offline.hpp"
#include "sched/preemption.hpp"
#include "sched/schedulers.hpp"

namespace {

sched::Instance make_instance(int n) {
  sched::GenConfig cfg;
  cfg.n = n;
  cfg.r_max = 3.0;
  cfg.seed = 42;
  return sched::gen_random_instance(cfg);
}

void BM_RunPcp(benchmark::State& state) {
  sched::Instance inst = make_instance(int(state.range(0)));
  for (auto _ : state) {
    sched::Schedule s = sched::run_pcp(inst, {1.5, 1.5});
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_RunPcp)->Arg(8)->Arg(64)->Arg(512);

void BM_RunPcpParallel(benchmark::State& state) {
  sched::Instance inst = make_instance(256);
  int m = int(state.range(0));
  for (auto _ : state) {
    sched::Schedule s = sched::run_pcp_parallel(inst, m, {1.5, 1.5});
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_RunPcpParallel)->Arg(2)->Arg(4)->Arg(8);

void BM_PairBounds(benchmark::State& state) {
  sched::Instance inst = make_instance(int(state.range(0)));
  sched::Schedule s = sched::run_pcp(inst, {1.5, 1.5});
  for (auto _ : state) {
    sched::PairBoundReport r =
        sched::check_pair_bounds(s, sched::PairAlgo::pcp, {1.5, 1.5});
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_PairBounds)->Arg(8)->Arg(64)->Arg(256);

void BM_Contributions(benchmark::State& state) {
  sched::Instance inst = make_instance(int(state.range(0)));
  sched::Schedule s = sched::run_pcp(inst, {1.5, 1.5});
  for (auto _ : state) {
    sched::ContributionMatrix m = sched::contributions(s);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_Contributions)->Arg(8)->Arg(64)->Arg(256);

void BM_OptCostParallel(benchmark::State& state) {
  sched::Instance inst = make_instance(int(state.range(0)));
  for (auto _ : state) {
    double v = sched::opt_cost_parallel(inst, 4);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_OptCostParallel)->Arg(64)->Arg(1024);

void BM_AdversaryGame(benchmark::State& state) {
  auto s = sched::make_baseline_scheduler(sched::BaselineKind::test_all);
  int m = int(state.range(0));
  for (auto _ : state) {
    sched::GameResult g = sched::run_adversary_game(*s, m);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_AdversaryGame)->Arg(2)->Arg(8)->Arg(16);

void BM_FullyMerge(benchmark::State& state) {
  sched::PreemptiveSchedule s =
      sched::gen_random_preemptive(int(state.range(0)), 4, 7);
  for (auto _ : state) {
    sched::PreemptiveSchedule m = sched::fully_merge(s);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_FullyMerge)->Arg(16)->Arg(128);

void BM_RandWorstRatio(benchmark::State& state) {
  for (auto _ : state) {
    sched::RandWorstRatio w = sched::rand_worst_ratio(2.0);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_RandWorstRatio);

}  // namespace

BENCHMARK_MAIN();
