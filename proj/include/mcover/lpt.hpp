#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "mcover/core.hpp"

namespace mcover {

// Decides which least loaded machine receives the next job during
// list-scheduling. Deterministic for identical inputs.
class TieBreak {
 public:
  static TieBreak lowest_index() { return TieBreak({}, false); }
  static TieBreak prefer(std::set<MachineId> preferred) { return TieBreak(std::move(preferred), true); }

  // candidates: least loaded machines in ascending order, never empty.
  [[nodiscard]] MachineId choose(const std::vector<MachineId>& candidates) const {
    if (prefer_) {
      for (MachineId c : candidates) {
        if (preferred_.count(c)) return c;
      }
    }
    return candidates.front();
  }

  [[nodiscard]] bool prefers_set() const { return prefer_; }
  [[nodiscard]] const std::set<MachineId>& preferred() const { return preferred_; }

 private:
  TieBreak(std::set<MachineId> preferred, bool prefer) : preferred_(std::move(preferred)), prefer_(prefer) {}

  std::set<MachineId> preferred_;
  bool prefer_ = false;
};

// Places each job, in the given order, on a machine of minimum rounded load.
inline void list_schedule(Schedule& s, std::span<const Job> jobs, const TieBreak& tb = TieBreak::lowest_index()) {
  for (const Job& j : jobs) {
    if (s.contains(j.id)) {
      throw std::invalid_argument("list_schedule: job " + std::to_string(j.id) + " already assigned");
    }
    s.assign(j, tb.choose(s.least_loaded()));
  }
}

inline std::vector<Job> lpt_order(std::vector<Job> jobs) {
  std::sort(jobs.begin(), jobs.end(), larger_first);
  return jobs;
}

inline Schedule lpt_schedule(const Instance& inst, const TieBreak& tb = TieBreak::lowest_index()) {
  Schedule s(inst.machine_count());
  const std::vector<Job> order = lpt_order(inst.jobs());
  list_schedule(s, order, tb);
  return s;
}

namespace detail {

inline void require_same_jobs(const Schedule& s, const Instance& inst) {
  if (s.machine_count() != inst.machine_count() || s.job_count() != inst.size()) {
    throw std::invalid_argument("schedule does not match instance");
  }
  for (const Job& j : inst.jobs()) {
    if (!s.contains(j.id) || !(s.job(j.id) == j)) {
      throw std::invalid_argument("schedule does not match instance: job " + std::to_string(j.id));
    }
  }
}

}  // namespace detail

// True iff some tie-breaking rule makes LPT produce s. Works one rounded size
// class at a time, largest first: with the loads left by the larger classes,
// list-scheduling the class reaches a minimum load lambda that does not depend
// on tie-breaking, and a placement of the class is producible by
// list-scheduling iff every machine i received
//   no job                      when load_i > lambda,
//   ceil(r_i) jobs              when r_i = (lambda - load_i) / p is fractional,
//   r_i or r_i + 1 jobs         when r_i is integral.
inline bool is_lpt_solution(const Schedule& s, const Instance& inst) {
  detail::require_same_jobs(s, inst);
  const std::size_t m = s.machine_count();

  std::map<Rational, std::vector<JobId>, std::greater<>> classes;
  for (const Job& j : inst.jobs()) classes[j.rounded].push_back(j.id);

  std::vector<Rational> base(m);
  for (const auto& [p, ids] : classes) {
    std::vector<Rational> reference = base;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      auto lo = std::min_element(reference.begin(), reference.end());
      *lo += p;
    }
    const Rational lambda = *std::min_element(reference.begin(), reference.end());

    std::vector<long> count(m, 0);
    for (JobId id : ids) ++count[s.machine_of(id)];

    for (MachineId i = 0; i < m; ++i) {
      const Rational gap = lambda - base[i];
      const Integer c(count[i]);
      const Rational r = gap / p;
      if (gap.sign() < 0) {
        if (count[i] != 0) return false;
      } else if (r.is_integer()) {
        const Integer ri = r.floor();
        if (c != ri && c != ri + 1) return false;
      } else if (c != r.ceil()) {
        return false;
      }
      base[i] += p * Rational(count[i]);
    }
  }
  return true;
}

}  // namespace mcover
