#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sched/model.hpp"
#include "sched/schedulers.hpp"

namespace sched {

// c(k, j): time the schedule spends on job k before the reference point of
// job j (completion time on one machine, last-segment start on parallel
// machines). Rows and columns are indexed by job id.
class ContributionMatrix {
 public:
  explicit ContributionMatrix(std::vector<std::int64_t> ids);

  double at(std::int64_t k_id, std::int64_t j_id) const;
  void add(std::int64_t k_id, std::int64_t j_id, double v);
  double column_sum(std::int64_t j_id) const;
  const std::vector<std::int64_t>& ids() const { return ids_; }

 private:
  std::size_t index(std::int64_t id) const;
  std::vector<std::int64_t> ids_;  // ascending
  std::vector<double> cells_;      // row-major: [k][j]
};

// Single-machine contributions, measured against completion times.
// Rejects parallel schedules (use contributions_parallel).
ContributionMatrix contributions(const Schedule& s);

// Last maximal contiguous block that completes a job: the untested execution,
// the whole test+execution block when they ran back to back on one machine
// with no other job in between, or the execution alone otherwise.
struct SegmentInfo {
  double start;
  double length;
};

SegmentInfo last_segment(const Schedule& s, std::int64_t job_id);

// Parallel contributions, measured against last-segment starts (summed over
// machines). At m=1 this is the single-machine value taken at the segment
// start instead of the completion.
ContributionMatrix contributions_parallel(const Schedule& s);

enum class PairAlgo { ae, pcp };

// Which amortized pair bound applied to a pair (keyed by job k's state).
enum class PairLemma { untested, tested_ae, tested_pcp };

struct PairBound {
  std::int64_t k_id;  // earlier job in offline order
  std::int64_t j_id;
  PairLemma lemma;
  double lhs;  // c(k,j) + c(j,k)
  double rhs;
  double slack;  // rhs - lhs
};

struct PairBoundReport {
  std::vector<PairBound> entries;
  double min_slack;  // +inf when there are no pairs
};

// Evaluate the amortized pair bounds on a single-machine schedule produced by
// the matching deterministic algorithm. Pairs follow the offline order; tied
// pairs are checked in both orientations. Throws algorithm_mismatch if the
// schedule's tested flags contradict the threshold rule.
PairBoundReport check_pair_bounds(const Schedule& s, PairAlgo algo,
                                  const AlgoParams& params);

// Closed-form worst-case ratios.
double expr_ae_bound(double alpha, double beta);
double expr_pcp_bound(double alpha, double beta);

// Parallel-machine bound R*(1/2 + 1/(2m)) + r*(1 - 1/m); R is the
// single-machine guarantee (threshold form for uniform testing times) and
// r = max{alpha, 1 + 1/alpha} caps per-job time against the offline time.
double expr_parallel_bound(double m, double alpha, double beta,
                           bool uniform_testing);

// Worst-case expressions of the randomized analysis for a job with ratio r
// tested with probability prob.
double rand_expr_untested(double r, double beta, double prob);
double rand_expr_tested(double r, double beta, double prob);

struct RandWorstRatio {
  double r;      // argmax ratio u/t
  double ratio;  // sup over r of max(rand_expr_untested, rand_expr_tested)
};

// Numeric maximization over r in [1e-3, 1e3] (1e6-point log grid plus local
// refinement) of the randomized pair expressions at test_probability(r, beta).
RandWorstRatio rand_worst_ratio(double beta);

// Exact expected total completion time of the randomized algorithm: full
// enumeration over the jobs with testing probability strictly inside (0,1).
// At most 20 such jobs (too_many_random_jobs otherwise).
double rand_expected_cost_exact(const Instance& inst, double beta);

enum class AlgoKind { ae, pcp, rand_pcp, pcp_parallel, uniform_parallel };

const char* algo_name(AlgoKind kind);

struct AlgoSpec {
  AlgoKind kind = AlgoKind::pcp;
  double alpha = 1.0;
  double beta = 1.0;
  int m = 1;
  std::uint64_t seed = 0;  // rand_pcp only
};

Schedule run_algo(const AlgoSpec& spec, const Instance& inst);

struct RatioReport {
  std::string algo;
  double alpha;
  double beta;
  int m;
  double alg_cost;
  double opt_cost;
  double ratio;
  double bound;  // matching theorem bound for the algorithm
  std::string fingerprint;
};

// Run the algorithm, compare against the exact offline optimum. A zero
// optimum with zero algorithm cost reports ratio 1; a zero optimum with
// positive cost is degenerate_opt_zero.
RatioReport empirical_ratio(const AlgoSpec& spec, const Instance& inst);

struct SearchResult {
  Instance instance;
  RatioReport report;
  long evaluations;
};

// Random restarts plus coordinate hill climbing over multiplicative
// perturbations of (t, u, p), p clamped into [0, u]. Deterministic per seed.
// For n=2 single-machine searches the classic hard pair seeds the search.
SearchResult worst_case_search(const AlgoSpec& spec, int n, long budget,
                               std::uint64_t seed);

// List-scheduling segment property: if o1 precedes o2 in the priority list,
// o2 does not start before the contiguous same-machine segment containing o1.
bool check_gong_property(const Schedule& s, const std::vector<int>& list_order);

}  // namespace sched
