#include "sched/schedulers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "sched/rng.hpp"

namespace sched {

void require_params(const AlgoParams& params) {
  if (!(params.alpha >= 1))
    throw std::invalid_argument("alpha must be >= 1");
  if (!(params.beta > 0))
    throw std::invalid_argument("beta must be > 0");
}

void TaskQueue::insert(const Task& task) {
  if (!pending_ids_.insert(task.job_id).second)
    throw std::logic_error("job " + std::to_string(task.job_id) +
                           " already has a pending task");
  entries_.insert(task);
}

Task TaskQueue::extract_min() {
  if (entries_.empty()) throw std::logic_error("extract_min on empty queue");
  Task t = *entries_.begin();
  entries_.erase(entries_.begin());
  pending_ids_.erase(t.job_id);
  return t;
}

std::vector<Task> TaskQueue::snapshot() const {
  return {entries_.begin(), entries_.end()};
}

namespace {

bool threshold_tests(const Job& j, const AlgoParams& params) {
  return j.u >= params.alpha * j.t;
}

Task make_initial_task(const Job& j, const AlgoParams& params, bool tested) {
  if (tested) return {j.id, TaskKind::test, j.t, params.beta * j.t};
  return {j.id, TaskKind::exec_untested, j.u, j.u};
}

// Shared single-machine queue execution. Tested jobs re-enter as Exec with
// weight p (exec_weight_full=false) or t+p (true).
Schedule run_single(const Instance& inst, const AlgoParams& params,
                    bool exec_weight_full,
                    const std::map<std::int64_t, bool>* forced) {
  require_valid(inst);
  require_params(params);
  if (inst.m != 1)
    fail(errc::machine_count_unsupported,
         "single-machine scheduler, but instance has m=" + std::to_string(inst.m));

  Schedule s;
  s.instance = inst;
  s.machine_count = 1;
  TaskQueue queue;
  for (const Job& j : inst.jobs) {
    bool tested = forced ? forced->at(j.id) : threshold_tests(j, params);
    s.tested[j.id] = tested;
    queue.insert(make_initial_task(j, params, tested));
  }

  double clock = 0;
  while (!queue.empty()) {
    Task task = queue.extract_min();
    double start = clock;
    clock += task.duration;
    s.placed.push_back({task, 0, start, clock});
    if (task.kind == TaskKind::test) {
      const Job& j = inst.job(task.job_id);
      double w = exec_weight_full ? j.t + j.p : j.p;
      queue.insert({j.id, TaskKind::exec, j.p, w});
    } else {
      s.completion[task.job_id] = clock;
    }
  }
  s.list_order.resize(s.placed.size());
  std::iota(s.list_order.begin(), s.list_order.end(), 0);
  return s;
}

}  // namespace

double schedule_cost(const Schedule& s, Objective obj) {
  if (obj == Objective::total_completion) {
    double total = 0;
    for (const auto& [id, c] : s.completion) total += c;
    return total;
  }
  double makespan = 0;
  for (const PlacedTask& pt : s.placed) makespan = std::max(makespan, pt.end);
  return makespan;
}

TaskQueue initial_queue(const Instance& inst, const AlgoParams& params) {
  require_valid(inst);
  require_params(params);
  TaskQueue queue;
  for (const Job& j : inst.jobs)
    queue.insert(make_initial_task(j, params, threshold_tests(j, params)));
  return queue;
}

Schedule run_ae(const Instance& inst, const AlgoParams& params) {
  return run_single(inst, params, false, nullptr);
}

Schedule run_pcp(const Instance& inst, const AlgoParams& params) {
  return run_single(inst, params, true, nullptr);
}

Schedule run_pcp_forced(const Instance& inst, double beta,
                        const std::map<std::int64_t, bool>& tested) {
  for (const Job& j : inst.jobs)
    if (!tested.count(j.id))
      throw std::invalid_argument("forced tested set misses job " +
                                  std::to_string(j.id));
  return run_single(inst, AlgoParams{1.0, beta}, true, &tested);
}

double test_probability(double r, double beta) {
  if (!(beta > 0)) throw std::invalid_argument("beta must be > 0");
  if (std::isnan(r)) throw std::invalid_argument("r must not be NaN");
  if (r < 1) return 0;
  if (r > 3) return 1;  // +inf (t=0) lands here: a free test is always worth it
  double x = std::max({2 / r + 1, beta / r, (1 + 1 / beta) * (1 + 1 / r)});
  double y = std::max({2.0, beta, 1 + 1 / beta});
  double num = (beta + 1) * (r - 1);
  if (num <= 0) return 0;
  double den = beta * (x - y + r - 1) + (r - 1);
  double p = num / den;  // +-inf when den == 0
  if (!(p > 0)) return 0;
  return std::min(p, 1.0);
}

std::vector<RandDecision> rand_decisions(const Instance& inst, double beta,
                                         std::uint64_t seed) {
  require_valid(inst);
  std::vector<RandDecision> out;
  out.reserve(inst.jobs.size());
  for (const Job& j : inst.jobs) {
    RandDecision d;
    d.job_id = j.id;
    d.r = j.t > 0 ? j.u / j.t : std::numeric_limits<double>::infinity();
    d.prob = test_probability(d.r, beta);
    d.tested = unit_from_keys(seed, std::uint64_t(j.id)) < d.prob;
    out.push_back(d);
  }
  return out;
}

Schedule run_rand_pcp(const Instance& inst, double beta, std::uint64_t seed) {
  std::map<std::int64_t, bool> tested;
  for (const RandDecision& d : rand_decisions(inst, beta, seed))
    tested[d.job_id] = d.tested;
  return run_pcp_forced(inst, beta, tested);
}

namespace {

// Entry in the parallel list scheduler, ordered by (k1, k2, job id, kind).
struct EngineTask {
  Task task;
  double k1 = 0;
  double k2 = 0;
  double release = 0;
  int preferred_machine = -1;  // an Exec prefers the machine of its test

  bool operator<(const EngineTask& o) const {
    if (k1 != o.k1) return k1 < o.k1;
    if (k2 != o.k2) return k2 < o.k2;
    if (task.job_id != o.task.job_id) return task.job_id < o.task.job_id;
    return int(task.kind) < int(o.task.kind);
  }
};

// Event-driven list scheduling: whenever a machine is idle and a released
// task exists, the smallest task (by key) is placed. A newly released Exec
// goes to the machine that ran its test when that machine is idle; otherwise
// just-freed machines win over long-idle ones, then lowest index. This keeps
// every execution glued to its test unless something smaller displaced it in
// the same instant, which is what the segment property needs.
Schedule run_parallel_list(
    const Instance& inst, int m, std::vector<EngineTask> initial,
    const std::function<EngineTask(const Job&, double, int)>& exec_entry,
    std::map<std::int64_t, bool> tested) {
  Schedule s;
  s.instance = inst;
  s.machine_count = m;
  s.tested = std::move(tested);

  std::set<EngineTask> available;
  auto by_release = [](const EngineTask& a, const EngineTask& b) {
    return a.release > b.release;
  };
  std::priority_queue<EngineTask, std::vector<EngineTask>, decltype(by_release)>
      future(by_release);

  std::size_t outstanding = 0;  // tasks not yet placed (including future execs)
  for (EngineTask& e : initial) {
    ++outstanding;
    available.insert(std::move(e));
  }

  std::vector<double> free_at(m, 0.0);
  std::vector<std::pair<double, double>> keys;  // (k1,k2) per placed task
  double now = 0;

  auto pick_machine = [&](const EngineTask& e) {
    if (e.preferred_machine >= 0 && free_at[e.preferred_machine] <= now)
      return e.preferred_machine;
    int fallback = -1;
    for (int i = 0; i < m; ++i) {
      if (free_at[i] > now) continue;
      if (free_at[i] == now) return i;  // just freed
      if (fallback < 0) fallback = i;
    }
    return fallback;
  };

  while (outstanding > 0) {
    while (!future.empty() && future.top().release <= now) {
      available.insert(future.top());
      future.pop();
    }
    bool placed_any = false;
    if (!available.empty()) {
      EngineTask e = *available.begin();
      int mi = pick_machine(e);
      if (mi >= 0) {
        available.erase(available.begin());
        double end = now + e.task.duration;
        s.placed.push_back({e.task, mi, now, end});
        keys.emplace_back(e.k1, e.k2);
        free_at[mi] = end;
        --outstanding;
        if (e.task.kind == TaskKind::test) {
          const Job& j = inst.job(e.task.job_id);
          EngineTask x = exec_entry(j, end, mi);
          x.release = end;
          ++outstanding;
          future.push(std::move(x));
        } else {
          s.completion[e.task.job_id] = end;
        }
        placed_any = true;
      }
    }
    if (placed_any) continue;

    double next = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i)
      if (free_at[i] > now) next = std::min(next, free_at[i]);
    if (!future.empty()) next = std::min(next, future.top().release);
    if (!(next > now))
      throw std::logic_error("parallel engine stalled");  // unreachable
    now = next;
  }

  s.list_order.resize(s.placed.size());
  std::iota(s.list_order.begin(), s.list_order.end(), 0);
  std::sort(s.list_order.begin(), s.list_order.end(), [&](int a, int b) {
    if (keys[a] != keys[b]) return keys[a] < keys[b];
    const PlacedTask &pa = s.placed[a], &pb = s.placed[b];
    if (pa.task.job_id != pb.task.job_id) return pa.task.job_id < pb.task.job_id;
    return int(pa.task.kind) < int(pb.task.kind);
  });
  return s;
}

}  // namespace

Schedule run_pcp_parallel(const Instance& inst, int m, const AlgoParams& params) {
  require_valid(inst);
  require_params(params);
  if (m < 1) fail(errc::bad_machine_count, "m must be >= 1");

  std::vector<EngineTask> initial;
  std::map<std::int64_t, bool> tested;
  for (const Job& j : inst.jobs) {
    bool test = threshold_tests(j, params);
    tested[j.id] = test;
    Task t = make_initial_task(j, params, test);
    initial.push_back({t, t.weight, 0.0, 0.0, -1});
  }
  auto exec_entry = [&](const Job& j, double, int machine) {
    Task t{j.id, TaskKind::exec, j.p, j.t + j.p};
    return EngineTask{t, t.weight, 0.0, 0.0, machine};
  };
  return run_parallel_list(inst, m, std::move(initial), exec_entry,
                           std::move(tested));
}

Schedule run_uniform_parallel(const Instance& inst, int m, double alpha) {
  require_valid(inst);
  if (!(alpha >= 1)) throw std::invalid_argument("alpha must be >= 1");
  if (m < 1) fail(errc::bad_machine_count, "m must be >= 1");
  for (const Job& j : inst.jobs)
    if (j.t != inst.jobs.front().t)
      fail(errc::non_uniform_testing,
           "testing times differ (job " + std::to_string(j.id) + ")");

  // Phase-major list: untested by (u, id), tests by id, executions by (p, id).
  std::vector<EngineTask> initial;
  std::map<std::int64_t, bool> tested;
  for (const Job& j : inst.jobs) {
    bool test = j.u >= alpha * j.t;
    tested[j.id] = test;
    if (test)
      initial.push_back({Task{j.id, TaskKind::test, j.t, 0.0}, 1.0, 0.0, 0.0, -1});
    else
      initial.push_back(
          {Task{j.id, TaskKind::exec_untested, j.u, j.u}, 0.0, j.u, 0.0, -1});
  }
  auto exec_entry = [&](const Job& j, double, int machine) {
    Task t{j.id, TaskKind::exec, j.p, j.p};
    return EngineTask{t, 2.0, j.p, 0.0, machine};
  };
  return run_parallel_list(inst, m, std::move(initial), exec_entry,
                           std::move(tested));
}

}  // namespace sched
