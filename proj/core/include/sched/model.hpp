#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sched {

// Error identifiers shared across the library. Everything diagnosable gets a
// stable name so callers (and the CLI) can react without string matching.
enum class errc {
  negative_duration,
  p_exceeds_u,
  duplicate_id,
  empty_instance,
  bad_machine_count,
  syntax_error,
  schema_error,
  machine_count_unsupported,
  non_uniform_testing,
  too_many_random_jobs,
  parallel_schedule_needs_segment_variant,
  algorithm_mismatch,
  degenerate_opt_zero,
  no_such_piece,
  already_contiguous,
  scheduler_violation,
  incomplete_schedule,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message);
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] void fail(errc code, const std::string& message);

// A job with testing time t and upper limit u. The real processing time p is
// hidden from online algorithms until the job is tested; running the job
// untested costs u.
struct Job {
  std::int64_t id = 0;
  double t = 0;
  double u = 0;
  double p = 0;
};

struct Instance {
  int m = 1;  // identical machines
  std::vector<Job> jobs;

  const Job* find(std::int64_t id) const;
  const Job& job(std::int64_t id) const;  // throws std::out_of_range if absent
};

// First violated invariant of an instance, if any.
struct Violation {
  errc code;
  std::int64_t job_id;  // -1 when not tied to a particular job
  std::string message;
};

std::optional<Violation> validate_instance(const Instance& inst);
void require_valid(const Instance& inst);  // throws Error on violation

// Absolute tolerance for inequality checks on this instance: 1e-9 scaled by
// (number of jobs x largest duration), floored so that tiny instances still
// get a usable tolerance.
double check_tolerance(const Instance& inst);

enum class TaskKind { test, exec, exec_untested };

const char* task_kind_name(TaskKind kind);

// One schedulable unit of work. The weight is the priority-queue key and is
// set exactly once, when the task is created.
struct Task {
  std::int64_t job_id = 0;
  TaskKind kind = TaskKind::exec;
  double duration = 0;
  double weight = 0;
};

}  // namespace sched
