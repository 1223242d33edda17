#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "sched/adversary.hpp"
#include "sched/generators.hpp"
#include "sched/json_io.hpp"
#include "sched/offline.hpp"
#include "sched/preemption.hpp"
#include "sched/rng.hpp"

namespace sched::cli {
namespace {

struct CheckFail {
  std::string what;
};

void check(bool ok, const std::string& what) {
  if (!ok) throw CheckFail{what};
}

std::map<std::int64_t, double> opt_times_by_id(const Instance& inst) {
  std::map<std::int64_t, double> out;
  for (const Job& j : inst.jobs) out[j.id] = opt_time(j);
  return out;
}

double algorithm_time(const Job& j, bool tested) {
  return tested ? j.t + j.p : j.u;
}

// Structure, testing rule, per-job time bound, column sums, pair slacks and
// the theorem bound, for one single-machine run.
void check_single_run(const Schedule& s, PairAlgo algo,
                      const AlgoParams& params, double bound,
                      double* min_slack) {
  const Instance& inst = s.instance;
  double tol = check_tolerance(inst);

  for (const Job& j : inst.jobs)
    check(s.tested.at(j.id) == (j.u >= params.alpha * j.t),
          "testing rule violated for job " + std::to_string(j.id));

  double clock = 0;
  std::map<std::int64_t, double> test_end;
  for (const PlacedTask& pt : s.placed) {
    check(pt.machine == 0, "machine index on a single-machine run");
    check(pt.start == clock, "gap in single-machine timeline");
    check(pt.end == pt.start + pt.task.duration, "task length mismatch");
    clock = pt.end;
    if (pt.task.kind == TaskKind::test) {
      test_end[pt.task.job_id] = pt.end;
    } else {
      check(s.completion.at(pt.task.job_id) == pt.end,
            "completion differs from final task end");
      if (pt.task.kind == TaskKind::exec)
        check(test_end.count(pt.task.job_id) &&
                  pt.start >= test_end[pt.task.job_id],
              "execution placed before its test");
    }
  }

  std::map<std::int64_t, double> pstar = opt_times_by_id(inst);
  double per_job_cap = std::max(params.alpha, 1 + 1 / params.alpha);
  for (const Job& j : inst.jobs)
    check(algorithm_time(j, s.tested.at(j.id)) <=
              per_job_cap * pstar[j.id] + 1e-9,
          "per-job time bound violated for job " + std::to_string(j.id));

  ContributionMatrix m = contributions(s);
  for (const Job& j : inst.jobs)
    check(std::abs(m.column_sum(j.id) - s.completion.at(j.id)) <= tol,
          "contribution column sum drifts from completion of job " +
              std::to_string(j.id));

  PairBoundReport report = check_pair_bounds(s, algo, params);
  check(report.min_slack >= -tol, "pair bound slack below -tolerance");
  *min_slack = std::min(*min_slack, report.min_slack);

  double alg = schedule_cost(s, Objective::total_completion);
  double opt = opt_cost_single(inst);
  check(opt > 0, "degenerate zero optimum from the generator");
  check(alg / opt <= bound + 1e-9, "ratio exceeds the theorem bound");
}

void check_parallel_run(const Schedule& s, double alpha, double bound) {
  for (const Job& j : s.instance.jobs)
    check(s.tested.at(j.id) == (j.u >= alpha * j.t),
          "testing rule violated on parallel run");
  check(check_gong_property(s, s.list_order), "segment property violated");
  double alg = schedule_cost(s, Objective::total_completion);
  double opt = opt_cost_parallel(s.instance, s.machine_count);
  check(opt > 0, "degenerate zero optimum from the generator");
  check(alg / opt <= bound + 1e-9, "parallel ratio exceeds the theorem bound");
}

void check_same_placement(const Schedule& a, const Schedule& b,
                          const std::string& what) {
  check(a.placed.size() == b.placed.size(), what);
  for (std::size_t i = 0; i < a.placed.size(); ++i) {
    const PlacedTask &x = a.placed[i], &y = b.placed[i];
    check(x.task.job_id == y.task.job_id && x.task.kind == y.task.kind &&
              x.start == y.start && x.end == y.end,
          what);
  }
}

// First still-split adjacency by position, or piece_index -1.
std::pair<std::int64_t, int> first_split(const PreemptiveSchedule& ps) {
  for (std::size_t i = 0; i + 1 < ps.pieces.size(); ++i)
    for (std::size_t j = i + 1; j < ps.pieces.size(); ++j) {
      if (ps.pieces[j].job_id != ps.pieces[i].job_id) continue;
      if (j > i + 1) return {ps.pieces[i].job_id, ps.pieces[i].piece_index};
      break;
    }
  return {0, -1};
}

void check_preemption(const PreemptiveSchedule& ps) {
  double before = preemptive_total_completion(ps);
  auto [job, piece] = first_split(ps);
  if (piece >= 0) {
    double after = preemptive_total_completion(right_merge(ps, job, piece));
    check(after <= before + 1e-9, "right-merge increased total completion");
  }
  PreemptiveSchedule merged = fully_merge(ps);
  check(preemptive_total_completion(merged) <= before + 1e-9,
        "full merge increased total completion");
  std::map<std::int64_t, std::pair<std::size_t, std::size_t>> span;
  std::map<std::int64_t, std::size_t> count;
  for (std::size_t i = 0; i < merged.pieces.size(); ++i) {
    std::int64_t id = merged.pieces[i].job_id;
    if (!count[id]++)
      span[id] = {i, i};
    else
      span[id].second = i;
  }
  for (const auto& [id, mm] : span)
    check(mm.second - mm.first + 1 == count[id],
          "merged schedule still splits job " + std::to_string(id));
}

}  // namespace

VerifyOutcome verify_battery(const VerifyConfig& cfg) {
  VerifyOutcome out;
  out.min_slack = std::numeric_limits<double>::infinity();
  AlgoParams params{cfg.spec.alpha, cfg.spec.beta};
  require_params(params);
  if (cfg.n < 1 || cfg.trials < 1) throw std::invalid_argument("n and trials must be >= 1");

  double ae_bound = expr_ae_bound(params.alpha, params.beta);
  double pcp_bound = expr_pcp_bound(params.alpha, params.beta);
  double rand_bound = rand_worst_ratio(params.beta).ratio;
  switch (cfg.spec.kind) {
    case AlgoKind::ae: out.bound = ae_bound; break;
    case AlgoKind::pcp: out.bound = pcp_bound; break;
    case AlgoKind::rand_pcp: out.bound = rand_bound; break;
    case AlgoKind::pcp_parallel:
      out.bound = expr_parallel_bound(cfg.spec.m, params.alpha, params.beta, false);
      break;
    case AlgoKind::uniform_parallel:
      out.bound = expr_parallel_bound(cfg.spec.m, params.alpha, params.beta, true);
      break;
  }

  try {
    for (int m = 2; m <= 8; ++m)
      for (BaselineKind kind : {BaselineKind::test_all, BaselineKind::never_test}) {
        auto scheduler = make_baseline_scheduler(kind);
        GameResult g = run_adversary_game(*scheduler, m);
        check(g.ratio >= 2 - 1.0 / (2 * m) - 1e-9,
              "adversary ratio floor violated at m=" + std::to_string(m) +
                  " scheduler=" + g.scheduler);
      }
  } catch (const CheckFail& f) {
    out.failed = true;
    out.failure = f.what;
    return out;
  }

  const double r_maxes[] = {1.5, 3.0, 6.0};
  for (long i = 0; i < cfg.trials; ++i) {
    std::uint64_t tseed =
        splitmix64(cfg.seed ^ (0x9e3779b97f4a7c15ULL * std::uint64_t(i + 1)));
    GenConfig gen;
    gen.n = 1 + int(splitmix64(tseed) % std::uint64_t(cfg.n));
    gen.r_max = r_maxes[i % 3];
    gen.seed = tseed;
    Instance inst = gen_random_instance(gen);

    try {
      Schedule ae = run_ae(inst, params);
      check_single_run(ae, PairAlgo::ae, params, ae_bound, &out.min_slack);
      Schedule pcp = run_pcp(inst, params);
      check_single_run(pcp, PairAlgo::pcp, params, pcp_bound, &out.min_slack);
      check_same_placement(pcp, run_pcp(inst, params),
                           "rerun produced a different schedule");
      check_same_placement(pcp, run_pcp_parallel(inst, 1, params),
                           "m=1 parallel run differs from the queue run");

      for (int m : {2, 3}) {
        Schedule s = run_pcp_parallel(inst, m, params);
        check_parallel_run(
            s, params.alpha,
            expr_parallel_bound(m, params.alpha, params.beta, false));
      }

      Instance uinst = inst;
      for (Job& j : uinst.jobs) j.t = inst.jobs.front().t;
      for (int m : {1, 2}) {
        Schedule s = run_uniform_parallel(uinst, m, params.alpha);
        check_parallel_run(
            s, params.alpha,
            expr_parallel_bound(m, params.alpha, params.beta, true));
      }

      std::vector<RandDecision> d1 = rand_decisions(inst, params.beta, tseed);
      std::vector<RandDecision> d2 = rand_decisions(inst, params.beta, tseed);
      check(d1.size() == d2.size(), "decision count drifted between runs");
      Schedule rnd = run_rand_pcp(inst, params.beta, tseed);
      int open = 0;
      for (std::size_t k = 0; k < d1.size(); ++k) {
        check(d1[k].tested == d2[k].tested && d1[k].prob == d2[k].prob,
              "randomized decisions are not a pure function of the seed");
        check(d1[k].prob >= 0 && d1[k].prob <= 1, "probability outside [0,1]");
        check(rnd.tested.at(d1[k].job_id) == d1[k].tested,
              "schedule ignored a coin flip");
        if (d1[k].prob > 0 && d1[k].prob < 1) ++open;
      }
      if (i % 101 == 0 && open <= 10) {
        double ev = rand_expected_cost_exact(inst, params.beta);
        double opt = opt_cost_single(inst);
        check(opt > 0, "degenerate zero optimum from the generator");
        check(ev / opt <= rand_bound + 1e-9,
              "expected ratio exceeds the randomized bound");
        if (cfg.spec.kind == AlgoKind::rand_pcp)
          out.max_ratio = std::max(out.max_ratio, ev / opt);
      }

      check_preemption(gen_random_preemptive(gen.n, 3, splitmix64(tseed + 1)));

      if (cfg.spec.kind != AlgoKind::rand_pcp) {
        Instance& target =
            cfg.spec.kind == AlgoKind::uniform_parallel ? uinst : inst;
        RatioReport r = empirical_ratio(cfg.spec, target);
        out.max_ratio = std::max(out.max_ratio, r.ratio);
      }
    } catch (const CheckFail& f) {
      out.failed = true;
      out.failed_trial = i;
      out.failure = f.what;
      out.offending_instance = serialize_instance(inst);
      return out;
    } catch (const Error& e) {
      out.failed = true;
      out.failed_trial = i;
      out.failure = std::string("unexpected error: ") + e.what();
      out.offending_instance = serialize_instance(inst);
      return out;
    }
    ++out.trials;
  }
  return out;
}

}  // namespace sched::cli
