#include "sched/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include "sched/generators.hpp"
#include "sched/json_io.hpp"
#include "sched/offline.hpp"
#include "sched/rng.hpp"

namespace sched {

ContributionMatrix::ContributionMatrix(std::vector<std::int64_t> ids)
    : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  cells_.assign(ids_.size() * ids_.size(), 0.0);
}

std::size_t ContributionMatrix::index(std::int64_t id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id)
    throw std::out_of_range("no such job id in contribution matrix");
  return std::size_t(it - ids_.begin());
}

double ContributionMatrix::at(std::int64_t k_id, std::int64_t j_id) const {
  return cells_[index(k_id) * ids_.size() + index(j_id)];
}

void ContributionMatrix::add(std::int64_t k_id, std::int64_t j_id, double v) {
  cells_[index(k_id) * ids_.size() + index(j_id)] += v;
}

double ContributionMatrix::column_sum(std::int64_t j_id) const {
  std::size_t j = index(j_id);
  double sum = 0;
  for (std::size_t k = 0; k < ids_.size(); ++k)
    sum += cells_[k * ids_.size() + j];
  return sum;
}

namespace {

std::vector<std::int64_t> job_ids(const Instance& inst) {
  std::vector<std::int64_t> ids;
  ids.reserve(inst.jobs.size());
  for (const Job& j : inst.jobs) ids.push_back(j.id);
  return ids;
}

// Time the schedule spends on each job before the cutoff, per column job.
ContributionMatrix contributions_before(
    const Schedule& s, const std::map<std::int64_t, double>& cutoff) {
  ContributionMatrix m(job_ids(s.instance));
  for (const Job& j : s.instance.jobs) {
    double c = cutoff.at(j.id);
    for (const PlacedTask& pt : s.placed) {
      double overlap = std::min(pt.end, c) - pt.start;
      if (overlap > 0) m.add(pt.task.job_id, j.id, overlap);
    }
  }
  return m;
}

void require_complete(const Schedule& s) {
  for (const Job& j : s.instance.jobs)
    if (!s.completion.count(j.id))
      fail(errc::incomplete_schedule,
           "job " + std::to_string(j.id) + " never completed");
}

}  // namespace

ContributionMatrix contributions(const Schedule& s) {
  if (s.machine_count != 1)
    fail(errc::parallel_schedule_needs_segment_variant,
         "completion-based contributions are single-machine only");
  require_complete(s);
  return contributions_before(s, s.completion);
}

SegmentInfo last_segment(const Schedule& s, std::int64_t job_id) {
  require_complete(s);
  std::size_t exec_at = s.placed.size(), test_at = s.placed.size();
  for (std::size_t i = 0; i < s.placed.size(); ++i) {
    if (s.placed[i].task.job_id != job_id) continue;
    if (s.placed[i].task.kind == TaskKind::test)
      test_at = i;
    else
      exec_at = i;
  }
  if (exec_at == s.placed.size())
    fail(errc::incomplete_schedule,
         "job " + std::to_string(job_id) + " has no completing task");
  const PlacedTask& exec = s.placed[exec_at];
  if (exec.task.kind == TaskKind::exec_untested || test_at == s.placed.size())
    return {exec.start, exec.end - exec.start};

  const PlacedTask& test = s.placed[test_at];
  bool merged = test.machine == exec.machine && test.end == exec.start;
  for (std::size_t i = test_at + 1; merged && i < exec_at; ++i)
    if (s.placed[i].machine == exec.machine) merged = false;
  if (merged) return {test.start, exec.end - test.start};
  return {exec.start, exec.end - exec.start};
}

ContributionMatrix contributions_parallel(const Schedule& s) {
  std::map<std::int64_t, double> cutoff;
  for (const Job& j : s.instance.jobs)
    cutoff[j.id] = last_segment(s, j.id).start;
  return contributions_before(s, cutoff);
}

namespace {

double pair_rhs(const Job& k, bool tested, PairAlgo algo, const AlgoParams& p,
                PairLemma* lemma) {
  if (!tested) {
    *lemma = PairLemma::untested;
    return (1 + 1 / p.beta) * k.u;
  }
  if (algo == PairAlgo::ae) {
    *lemma = PairLemma::tested_ae;
    return std::max({2 * k.t + k.p, (1 + p.beta) * k.t,
                     k.t + (1 + 1 / p.beta) * k.p});
  }
  *lemma = PairLemma::tested_pcp;
  return std::max({2 * k.t + k.p, p.beta * k.t,
                   (1 + 1 / p.beta) * (k.t + k.p)});
}

}  // namespace

PairBoundReport check_pair_bounds(const Schedule& s, PairAlgo algo,
                                  const AlgoParams& params) {
  require_params(params);
  if (s.machine_count != 1)
    fail(errc::machine_count_unsupported, "pair bounds are single-machine only");
  for (const Job& j : s.instance.jobs) {
    bool expected = j.u >= params.alpha * j.t;
    if (s.tested.at(j.id) != expected)
      fail(errc::algorithm_mismatch,
           "tested flag of job " + std::to_string(j.id) +
               " contradicts the threshold rule");
  }

  ContributionMatrix m = contributions(s);
  OptOrder order = opt_order(s.instance);
  PairBoundReport report;
  auto emit = [&](std::int64_t k_id, std::int64_t j_id) {
    PairBound b;
    b.k_id = k_id;
    b.j_id = j_id;
    b.lhs = m.at(k_id, j_id) + m.at(j_id, k_id);
    b.rhs = pair_rhs(s.instance.job(k_id), s.tested.at(k_id), algo, params,
                     &b.lemma);
    b.slack = b.rhs - b.lhs;
    report.entries.push_back(b);
  };
  for (std::size_t a = 0; a < order.ids.size(); ++a)
    for (std::size_t b = a + 1; b < order.ids.size(); ++b) {
      emit(order.ids[a], order.ids[b]);
      if (order.times[a] == order.times[b]) emit(order.ids[b], order.ids[a]);
    }

  report.min_slack = std::numeric_limits<double>::infinity();
  for (const PairBound& b : report.entries)
    report.min_slack = std::min(report.min_slack, b.slack);
  return report;
}

double expr_ae_bound(double alpha, double beta) {
  require_params({alpha, beta});
  return std::max({alpha * (1 + 1 / beta), 1 + 1 / alpha + 1 / beta, 1 + beta,
                   2.0, 1 + 2 / alpha});
}

double expr_pcp_bound(double alpha, double beta) {
  require_params({alpha, beta});
  return std::max({alpha * (1 + 1 / beta),
                   1 + 1 / alpha + 1 / beta + 1 / (alpha * beta), beta, 2.0,
                   1 + 2 / alpha});
}

double expr_parallel_bound(double m, double alpha, double beta,
                           bool uniform_testing) {
  if (!(m >= 1)) throw std::invalid_argument("m must be >= 1");
  double single = uniform_testing
                      ? std::max({2.0, alpha, 1 + 2 / alpha})
                      : expr_pcp_bound(alpha, beta);
  double per_job = std::max(alpha, 1 + 1 / alpha);
  return single * (0.5 + 0.5 / m) + per_job * (1 - 1 / m);
}

double rand_expr_untested(double r, double beta, double prob) {
  double x = std::max({2 / r + 1, beta / r, (1 + 1 / beta) * (1 + 1 / r)});
  return (1 + 1 / beta) * (1 - prob) + x * prob;
}

double rand_expr_tested(double r, double beta, double prob) {
  double y = std::max({2.0, beta, 1 + 1 / beta});
  return (1 + 1 / beta) * r * (1 - prob) + y * prob;
}

namespace {

double rand_point_ratio(double r, double beta) {
  double prob = test_probability(r, beta);
  return std::max(rand_expr_untested(r, beta, prob),
                  rand_expr_tested(r, beta, prob));
}

}  // namespace

RandWorstRatio rand_worst_ratio(double beta) {
  if (!(beta > 0)) throw std::invalid_argument("beta must be > 0");
  const double lo = 1e-3, hi = 1e3;
  const int n = 1'000'000;
  const double log_lo = std::log(lo), step = (std::log(hi) - log_lo) / (n - 1);

  RandWorstRatio best{lo, rand_point_ratio(lo, beta)};
  for (int i = 1; i < n; ++i) {
    double r = std::exp(log_lo + i * step);
    double v = rand_point_ratio(r, beta);
    if (v > best.ratio) best = {r, v};
  }

  // Local refinement: repeatedly re-grid a shrinking bracket around the max.
  double span = best.r * (std::exp(step) - std::exp(-step));
  for (int round = 0; round < 60 && span > 1e-13 * best.r; ++round) {
    double a = std::max(lo, best.r - span), b = std::min(hi, best.r + span);
    for (int i = 0; i <= 32; ++i) {
      double r = a + (b - a) * i / 32;
      double v = rand_point_ratio(r, beta);
      if (v > best.ratio) best = {r, v};
    }
    span /= 4;
  }
  return best;
}

double rand_expected_cost_exact(const Instance& inst, double beta) {
  require_valid(inst);
  if (inst.m != 1)
    fail(errc::machine_count_unsupported, "exact expectation needs m=1");

  std::map<std::int64_t, bool> tested;
  std::vector<std::pair<std::int64_t, double>> random_jobs;
  for (const Job& j : inst.jobs) {
    double r = j.t > 0 ? j.u / j.t : std::numeric_limits<double>::infinity();
    double prob = test_probability(r, beta);
    if (prob <= 0)
      tested[j.id] = false;
    else if (prob >= 1)
      tested[j.id] = true;
    else
      random_jobs.emplace_back(j.id, prob);
  }
  if (random_jobs.size() > 20)
    fail(errc::too_many_random_jobs,
         std::to_string(random_jobs.size()) +
             " jobs with open testing probability (limit 20)");

  double expected = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << random_jobs.size());
       ++mask) {
    double weight = 1;
    for (std::size_t i = 0; i < random_jobs.size(); ++i) {
      bool test = mask >> i & 1;
      tested[random_jobs[i].first] = test;
      weight *= test ? random_jobs[i].second : 1 - random_jobs[i].second;
    }
    if (weight == 0) continue;
    Schedule s = run_pcp_forced(inst, beta, tested);
    expected += weight * schedule_cost(s, Objective::total_completion);
  }
  return expected;
}

const char* algo_name(AlgoKind kind) {
  switch (kind) {
    case AlgoKind::ae: return "ae";
    case AlgoKind::pcp: return "pcp";
    case AlgoKind::rand_pcp: return "rand-pcp";
    case AlgoKind::pcp_parallel: return "pcp-parallel";
    case AlgoKind::uniform_parallel: return "uniform-parallel";
  }
  return "?";
}

Schedule run_algo(const AlgoSpec& spec, const Instance& inst) {
  AlgoParams params{spec.alpha, spec.beta};
  switch (spec.kind) {
    case AlgoKind::ae: return run_ae(inst, params);
    case AlgoKind::pcp: return run_pcp(inst, params);
    case AlgoKind::rand_pcp: return run_rand_pcp(inst, spec.beta, spec.seed);
    case AlgoKind::pcp_parallel: return run_pcp_parallel(inst, spec.m, params);
    case AlgoKind::uniform_parallel:
      return run_uniform_parallel(inst, spec.m, spec.alpha);
  }
  throw std::logic_error("unknown algorithm kind");
}

namespace {

bool is_parallel(AlgoKind kind) {
  return kind == AlgoKind::pcp_parallel || kind == AlgoKind::uniform_parallel;
}

double bound_for(const AlgoSpec& spec) {
  switch (spec.kind) {
    case AlgoKind::ae: return expr_ae_bound(spec.alpha, spec.beta);
    case AlgoKind::pcp: return expr_pcp_bound(spec.alpha, spec.beta);
    case AlgoKind::rand_pcp: {
      // The sweep behind rand_worst_ratio is too slow to repeat per report.
      static std::mutex mu;
      static std::map<double, double> memo;
      std::lock_guard<std::mutex> lock(mu);
      auto [it, fresh] = memo.try_emplace(spec.beta, 0.0);
      if (fresh) it->second = rand_worst_ratio(spec.beta).ratio;
      return it->second;
    }
    case AlgoKind::pcp_parallel:
      return expr_parallel_bound(spec.m, spec.alpha, spec.beta, false);
    case AlgoKind::uniform_parallel:
      return expr_parallel_bound(spec.m, spec.alpha, spec.beta, true);
  }
  throw std::logic_error("unknown algorithm kind");
}

}  // namespace

RatioReport empirical_ratio(const AlgoSpec& spec, const Instance& inst) {
  Schedule s = run_algo(spec, inst);
  RatioReport report;
  report.algo = algo_name(spec.kind);
  report.alpha = spec.alpha;
  report.beta = spec.beta;
  report.m = is_parallel(spec.kind) ? spec.m : 1;
  report.alg_cost = schedule_cost(s, Objective::total_completion);
  report.opt_cost = is_parallel(spec.kind)
                        ? opt_cost_parallel(inst, spec.m)
                        : opt_cost_single(inst);
  if (report.opt_cost <= 0) {
    if (report.alg_cost > 0)
      fail(errc::degenerate_opt_zero,
           "optimal cost is zero but the algorithm paid " +
               format_double(report.alg_cost));
    report.ratio = 1;
  } else {
    report.ratio = report.alg_cost / report.opt_cost;
  }
  report.bound = bound_for(spec);
  report.fingerprint = instance_fingerprint(inst);
  return report;
}

namespace {

struct SearchState {
  const AlgoSpec& spec;
  long budget;
  long used = 0;
  double best_ratio = -1;
  Instance best_instance;

  bool exhausted() const { return used >= budget; }

  // Ratio of one candidate; degenerate instances score zero.
  double eval(const Instance& inst) {
    ++used;
    try {
      return empirical_ratio(spec, inst).ratio;
    } catch (const Error& e) {
      if (e.code() == errc::degenerate_opt_zero) return 0;
      throw;
    }
  }

  void consider(const Instance& inst, double ratio) {
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best_instance = inst;
    }
  }
};

}  // namespace

SearchResult worst_case_search(const AlgoSpec& spec, int n, long budget,
                               std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");

  SearchState state{spec, budget};
  Rng rng(seed);
  const double factors[] = {0.5, 0.9, 0.99, 1.01, 1.1, 2.0};
  const double r_maxes[] = {1.5, 3.0, 6.0};
  int restart = 0;

  auto climb = [&](Instance inst) {
    double ratio = state.eval(inst);
    state.consider(inst, ratio);
    bool improved = true;
    while (improved && !state.exhausted()) {
      improved = false;
      for (std::size_t ji = 0; ji < inst.jobs.size(); ++ji) {
        for (int field = 0; field < 3; ++field) {
          for (double f : factors) {
            if (state.exhausted()) return;
            Instance cand = inst;
            Job& job = cand.jobs[ji];
            double& v = field == 0 ? job.t : field == 1 ? job.u : job.p;
            v *= f;
            job.p = std::min(job.p, job.u);
            double r = state.eval(cand);
            state.consider(cand, r);
            if (r > ratio) {
              ratio = r;
              inst = std::move(cand);
              improved = true;
            }
          }
        }
      }
    }
  };

  if (n == 2 && !is_parallel(spec.kind)) climb(gen_pair_family(0.1));
  while (!state.exhausted()) {
    GenConfig cfg;
    cfg.n = n;
    cfg.r_max = r_maxes[restart % 3];
    cfg.seed = rng.next_u64();
    ++restart;
    climb(gen_random_instance(cfg));
  }

  SearchResult result;
  result.instance = state.best_instance;
  result.report = empirical_ratio(spec, state.best_instance);
  result.evaluations = state.used;
  return result;
}

bool check_gong_property(const Schedule& s, const std::vector<int>& list_order) {
  std::size_t n = s.placed.size();
  if (list_order.size() != n) return false;

  // Chain contiguous same-machine tasks to find each task's segment start.
  std::vector<double> seg_start(n);
  std::vector<std::size_t> by_start(n);
  for (std::size_t i = 0; i < n; ++i) by_start[i] = i;
  std::sort(by_start.begin(), by_start.end(), [&](std::size_t a, std::size_t b) {
    if (s.placed[a].start != s.placed[b].start)
      return s.placed[a].start < s.placed[b].start;
    return s.placed[a].end < s.placed[b].end;
  });
  std::map<int, std::size_t> last_on_machine;
  for (std::size_t i : by_start) {
    const PlacedTask& pt = s.placed[i];
    auto it = last_on_machine.find(pt.machine);
    if (it != last_on_machine.end() && s.placed[it->second].end == pt.start)
      seg_start[i] = seg_start[it->second];
    else
      seg_start[i] = pt.start;
    last_on_machine[pt.machine] = i;
  }

  double tol = check_tolerance(s.instance);
  double min_later_start = std::numeric_limits<double>::infinity();
  for (std::size_t i = n; i-- > 0;) {
    std::size_t idx = std::size_t(list_order[i]);
    if (idx >= n) return false;
    if (min_later_start < seg_start[idx] - tol) return false;
    min_later_start = std::min(min_later_start, s.placed[idx].start);
  }
  return true;
}

}  // namespace sched
