#include "sched/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sched {

const char* errc_name(errc code) {
  switch (code) {
    case errc::negative_duration: return "NegativeDuration";
    case errc::p_exceeds_u: return "PExceedsU";
    case errc::duplicate_id: return "DuplicateId";
    case errc::empty_instance: return "EmptyInstance";
    case errc::bad_machine_count: return "BadMachineCount";
    case errc::syntax_error: return "SyntaxError";
    case errc::schema_error: return "SchemaError";
    case errc::machine_count_unsupported: return "MachineCountUnsupported";
    case errc::non_uniform_testing: return "NonUniformTesting";
    case errc::too_many_random_jobs: return "TooManyRandomJobs";
    case errc::parallel_schedule_needs_segment_variant:
      return "ParallelScheduleNeedsSegmentVariant";
    case errc::algorithm_mismatch: return "AlgorithmMismatch";
    case errc::degenerate_opt_zero: return "DegenerateOptZero";
    case errc::no_such_piece: return "NoSuchPiece";
    case errc::already_contiguous: return "AlreadyContiguous";
    case errc::scheduler_violation: return "SchedulerViolation";
    case errc::incomplete_schedule: return "IncompleteSchedule";
  }
  return "UnknownError";
}

Error::Error(errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message),
      code_(code) {}

void fail(errc code, const std::string& message) { throw Error(code, message); }

const Job* Instance::find(std::int64_t id) const {
  for (const Job& j : jobs)
    if (j.id == id) return &j;
  return nullptr;
}

const Job& Instance::job(std::int64_t id) const {
  const Job* j = find(id);
  if (!j) throw std::out_of_range("no job with id " + std::to_string(id));
  return *j;
}

std::optional<Violation> validate_instance(const Instance& inst) {
  if (inst.m < 1)
    return Violation{errc::bad_machine_count, -1,
                     "m must be >= 1, got " + std::to_string(inst.m)};
  if (inst.jobs.empty())
    return Violation{errc::empty_instance, -1, "instance has no jobs"};
  std::set<std::int64_t> seen;
  for (const Job& j : inst.jobs) {
    if (j.id < 0)
      return Violation{errc::schema_error, j.id, "job id must be non-negative"};
    if (!seen.insert(j.id).second)
      return Violation{errc::duplicate_id, j.id,
                       "duplicate job id " + std::to_string(j.id)};
    for (double d : {j.t, j.u, j.p})
      if (!(std::isfinite(d) && d >= 0))
        return Violation{errc::negative_duration, j.id,
                         "durations must be finite and >= 0 (job " +
                             std::to_string(j.id) + ")"};
    if (j.p > j.u)
      return Violation{errc::p_exceeds_u, j.id,
                       "p > u for job " + std::to_string(j.id)};
  }
  return std::nullopt;
}

void require_valid(const Instance& inst) {
  if (auto v = validate_instance(inst)) fail(v->code, v->message);
}

double check_tolerance(const Instance& inst) {
  double max_dur = 0;
  for (const Job& j : inst.jobs)
    max_dur = std::max({max_dur, j.t, j.u, j.p});
  double scale = double(inst.jobs.size()) * max_dur;
  return 1e-9 * std::max(1.0, scale);
}

const char* task_kind_name(TaskKind kind) {
  switch (kind) {
    case TaskKind::test: return "test";
    case TaskKind::exec: return "exec";
    case TaskKind::exec_untested: return "exec_untested";
  }
  return "?";
}

}  // namespace sched
