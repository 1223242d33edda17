#pragma once

#include <cstdint>
#include <vector>

#include "sched/model.hpp"

namespace sched {

struct Piece {
  std::int64_t job_id = 0;
  int piece_index = 0;  // 0-based order within the job
  double duration = 0;
};

// Gapless single-machine preemptive schedule: pieces run back to back from
// time 0, and each job's pieces appear in piece_index order.
struct PreemptiveSchedule {
  std::vector<Piece> pieces;
};

// Sum over jobs of the end time of their final piece.
double preemptive_total_completion(const PreemptiveSchedule& s);

// Rotate (s_i, S, s_{i+1}) into (S, s_i, s_{i+1}) for the given job's pieces
// with indices i and i+1, where S is the non-empty block between them, then
// re-time gaplessly. Total completion time never increases: jobs finishing
// inside S finish earlier, everything else is unchanged.
PreemptiveSchedule right_merge(const PreemptiveSchedule& s, std::int64_t job_id,
                               int piece_index);

// Apply right_merge repeatedly, lowest job id first, then lowest piece index,
// until every job runs contiguously.
PreemptiveSchedule fully_merge(const PreemptiveSchedule& s);

// Random preemptive schedule for property tests: each job split into up to
// max_pieces positive pieces, interleaved uniformly while preserving piece
// order. Deterministic per seed.
PreemptiveSchedule gen_random_preemptive(int n_jobs, int max_pieces,
                                         std::uint64_t seed);

}  // namespace sched
