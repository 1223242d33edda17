#include "sched/preemption.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "sched/rng.hpp"

namespace sched {

double preemptive_total_completion(const PreemptiveSchedule& s) {
  std::map<std::int64_t, double> completion;
  double clock = 0;
  for (const Piece& p : s.pieces) {
    clock += p.duration;
    completion[p.job_id] = clock;
  }
  double total = 0;
  for (const auto& [id, c] : completion) total += c;
  return total;
}

PreemptiveSchedule right_merge(const PreemptiveSchedule& s, std::int64_t job_id,
                               int piece_index) {
  std::size_t a = s.pieces.size(), b = s.pieces.size();
  for (std::size_t i = 0; i < s.pieces.size(); ++i) {
    if (s.pieces[i].job_id != job_id) continue;
    if (s.pieces[i].piece_index == piece_index) a = i;
    if (s.pieces[i].piece_index == piece_index + 1) b = i;
  }
  if (a == s.pieces.size() || b == s.pieces.size())
    fail(errc::no_such_piece, "job " + std::to_string(job_id) +
                                  " lacks pieces " + std::to_string(piece_index) +
                                  " and " + std::to_string(piece_index + 1));
  if (b < a) throw std::logic_error("piece order violated");
  if (b == a + 1)
    fail(errc::already_contiguous,
         "pieces " + std::to_string(piece_index) + " and " +
             std::to_string(piece_index + 1) + " of job " +
             std::to_string(job_id) + " already touch");

  PreemptiveSchedule out = s;
  std::rotate(out.pieces.begin() + std::ptrdiff_t(a),
              out.pieces.begin() + std::ptrdiff_t(a) + 1,
              out.pieces.begin() + std::ptrdiff_t(b));
  return out;
}

PreemptiveSchedule fully_merge(const PreemptiveSchedule& s) {
  PreemptiveSchedule cur = s;
  while (true) {
    // Lowest (job id, piece index) among still-split adjacencies.
    bool found = false;
    std::int64_t best_job = 0;
    int best_piece = 0;
    for (std::size_t i = 0; i + 1 < cur.pieces.size(); ++i) {
      for (std::size_t j = i + 1; j < cur.pieces.size(); ++j) {
        if (cur.pieces[j].job_id != cur.pieces[i].job_id) continue;
        if (j > i + 1 &&
            (!found || cur.pieces[i].job_id < best_job ||
             (cur.pieces[i].job_id == best_job &&
              cur.pieces[i].piece_index < best_piece))) {
          best_job = cur.pieces[i].job_id;
          best_piece = cur.pieces[i].piece_index;
          found = true;
        }
        break;
      }
    }
    if (!found) break;
    cur = right_merge(cur, best_job, best_piece);
  }
  return cur;
}

PreemptiveSchedule gen_random_preemptive(int n_jobs, int max_pieces,
                                         std::uint64_t seed) {
  if (n_jobs < 1 || max_pieces < 1)
    throw std::invalid_argument("need at least one job and one piece");
  Rng rng(seed);
  PreemptiveSchedule s;
  for (int j = 0; j < n_jobs; ++j) {
    int pieces = 1 + int(rng.next_below(std::uint64_t(max_pieces)));
    for (int i = 0; i < pieces; ++i)
      s.pieces.push_back({j, i, rng.next_unit_positive()});
  }
  // Fisher-Yates on positions, then restore per-job piece order in place.
  for (std::size_t i = s.pieces.size(); i > 1; --i)
    std::swap(s.pieces[i - 1], s.pieces[rng.next_below(i)]);
  std::map<std::int64_t, std::vector<std::size_t>> slots;
  for (std::size_t i = 0; i < s.pieces.size(); ++i)
    slots[s.pieces[i].job_id].push_back(i);
  PreemptiveSchedule out = s;
  for (auto& [job, positions] : slots) {
    std::vector<Piece> own;
    for (std::size_t i : positions) own.push_back(s.pieces[i]);
    std::sort(own.begin(), own.end(), [](const Piece& x, const Piece& y) {
      return x.piece_index < y.piece_index;
    });
    for (std::size_t k = 0; k < positions.size(); ++k)
      out.pieces[positions[k]] = own[k];
  }
  return out;
}

}  // namespace sched
