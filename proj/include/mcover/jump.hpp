#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mcover/core.hpp"
#include "mcover/lpt.hpp"
#include "mcover/migration.hpp"
#include "mcover/rounding.hpp"

namespace mcover {

namespace detail {

// Smallest job size on each machine, nullopt for empty machines.
inline std::vector<std::optional<Rational>> smallest_per_machine(const Schedule& s, Measure m) {
  std::vector<std::optional<Rational>> out(s.machine_count());
  for (const auto& [id, e] : s.entries()) {
    auto& slot = out[e.machine];
    const Rational& p = e.job.measure(m);
    if (!slot || p < *slot) slot = p;
  }
  return out;
}

// Distinct job sizes present on each machine.
inline std::vector<std::set<Rational>> sizes_per_machine(const Schedule& s, Measure m) {
  std::vector<std::set<Rational>> out(s.machine_count());
  for (const auto& [id, e] : s.entries()) out[e.machine].insert(e.job.measure(m));
  return out;
}

}  // namespace detail

// l_i - p_j <= l_min for every job j on every machine i.
inline bool is_jump_optimal(const Schedule& s, Measure m = Measure::Rounded) {
  const Rational lo = s.min_load(m);
  const auto smallest = detail::smallest_per_machine(s, m);
  for (MachineId i = 0; i < s.machine_count(); ++i) {
    if (smallest[i] && s.load(i, m) - *smallest[i] > lo) return false;
  }
  return true;
}

// No single move makes the sorted load vector lexicographically larger.
// Checked by applying every move.
inline bool is_lex_jump_optimal(const Schedule& s, Measure m = Measure::Rounded) {
  const std::vector<Rational>& loads = s.loads(m);
  const std::vector<Rational> current = load_profile(s, m).values();
  const auto sizes = detail::sizes_per_machine(s, m);
  std::vector<Rational> trial;
  for (MachineId i = 0; i < s.machine_count(); ++i) {
    for (const Rational& p : sizes[i]) {
      for (MachineId t = 0; t < s.machine_count(); ++t) {
        if (t == i) continue;
        trial = loads;
        trial[i] -= p;
        trial[t] += p;
        std::sort(trial.begin(), trial.end());
        if (std::lexicographical_compare(current.begin(), current.end(), trial.begin(), trial.end())) return false;
      }
    }
  }
  return true;
}

namespace detail {

// (min load, number of machines above it); larger min wins, then more
// machines above the minimum.
struct Weight {
  Rational min;
  std::size_t above = 0;

  friend bool operator<(const Weight& a, const Weight& b) {
    if (a.min != b.min) return a.min < b.min;
    return a.above < b.above;
  }
};

inline Weight weight_of(const std::vector<Rational>& loads) {
  Weight w{*std::min_element(loads.begin(), loads.end()), 0};
  for (const auto& l : loads) {
    if (l != w.min) ++w.above;
  }
  return w;
}

// Weight after replacing the loads of machines a and b (a != b).
class WeightOracle {
 public:
  explicit WeightOracle(const std::vector<Rational>& loads) : loads_(loads) {
    for (MachineId i = 0; i < loads.size(); ++i) {
      count_[loads[i]]++;
      order_.push_back(i);
    }
    std::sort(order_.begin(), order_.end(), [&](MachineId x, MachineId y) { return loads_[x] < loads_[y]; });
  }

  [[nodiscard]] Weight after(MachineId a, const Rational& la, MachineId b, const Rational& lb) const {
    const std::size_t m = loads_.size();
    std::optional<Rational> rest;
    std::size_t rest_count = 0;
    for (MachineId i : order_) {
      if (i == a || i == b) continue;
      rest = loads_[i];
      rest_count = count_.at(*rest);
      if (loads_[a] == *rest) --rest_count;
      if (loads_[b] == *rest) --rest_count;
      break;
    }
    Rational lo = std::min(la, lb);
    if (rest) lo = std::min(lo, *rest);
    std::size_t at_min = 0;
    if (rest && *rest == lo) at_min += rest_count;
    if (la == lo) ++at_min;
    if (lb == lo) ++at_min;
    return {lo, m - at_min};
  }

 private:
  const std::vector<Rational>& loads_;
  std::map<Rational, std::size_t> count_;
  std::vector<MachineId> order_;
};

}  // namespace detail

// No single move and no exchange of two jobs on different machines improves
// the weight (min load, machines above the min load).
inline bool is_swap_optimal(const Schedule& s, Measure m = Measure::Rounded) {
  const std::size_t n = s.machine_count();
  if (n < 2) return true;
  const std::vector<Rational>& loads = s.loads(m);
  const detail::Weight base = detail::weight_of(loads);
  const detail::WeightOracle oracle(loads);
  const auto sizes = detail::sizes_per_machine(s, m);

  for (MachineId i = 0; i < n; ++i) {
    for (const Rational& p : sizes[i]) {
      for (MachineId t = 0; t < n; ++t) {
        if (t == i) continue;
        if (base < oracle.after(i, loads[i] - p, t, loads[t] + p)) return false;
        if (t < i) continue;
        for (const Rational& q : sizes[t]) {
          if (q == p) continue;
          if (base < oracle.after(i, loads[i] - p + q, t, loads[t] - q + p)) return false;
        }
      }
    }
  }
  return true;
}

struct PushResult {
  std::vector<Job> expelled;
  Schedule schedule;
};

// Assigns j to target, then expels original occupants k of target (largest
// first, ties by id) while l_target - p_k > l_min, repeating the scan until a
// full pass expels nothing.
inline PushResult push(Schedule s, MachineId target, const Job& j) {
  if (s.contains(j.id)) throw std::invalid_argument("push: job " + std::to_string(j.id) + " already assigned");
  std::vector<Job> occupants = s.jobs_on(target);
  std::sort(occupants.begin(), occupants.end(), larger_first);
  s.assign(j, target);

  std::vector<Job> expelled;
  for (bool changed = true; changed;) {
    changed = false;
    for (const Job& k : occupants) {
      if (!s.contains(k.id)) continue;
      if (s.load(target) - k.rounded > s.min_load()) {
        expelled.push_back(s.unassign(k.id));
        changed = true;
      }
    }
  }
  return {std::move(expelled), std::move(s)};
}

// Where Push places a job among the least loaded machines of the big-job
// schedule.
enum class PushTarget {
  LowestIndex,
  // The machine holding the largest job smaller than the inserted one; lowest
  // index when no candidate holds such a job.
  LargestSmallerJob,
};

inline MachineId choose_push_target(const Schedule& big, const Job& j, PushTarget rule) {
  const std::vector<MachineId> candidates = big.least_loaded();
  if (rule == PushTarget::LowestIndex) return candidates.front();
  std::optional<MachineId> best;
  std::optional<Rational> best_size;
  for (MachineId c : candidates) {
    for (JobId id : big.job_ids_on(c)) {
      const Rational& p = big.job(id).rounded;
      if (p < j.rounded && (!best_size || *best_size < p)) {
        best = c;
        best_size = p;
      }
    }
  }
  return best.value_or(candidates.front());
}

struct RelaxedCertificate {
  Rational k1;
  Rational k2;
  bool jobs_match = false;    // large jobs sit where the reference puts them
  bool spread_ok = false;     // machines with a small job stay near l_min
  bool witnessed = false;
};

// Tests whether s is a (k1, k2)-relaxed version of reference: jobs of size at
// least k1*eps*opt are on the reference machine, and every machine of s with a
// smaller job has load at most l_min(s) + k2*eps*opt.
inline RelaxedCertificate check_relaxed(const Schedule& s, const Schedule& reference, const Rational& k1,
                                        const Rational& k2, const Rational& eps, const Rational& opt,
                                        Measure m = Measure::Rounded) {
  if (s.machine_count() != reference.machine_count() || s.job_count() != reference.job_count()) {
    throw std::invalid_argument("check_relaxed: schedules cover different instances");
  }
  RelaxedCertificate cert{k1, k2};
  const Rational threshold = k1 * eps * opt;
  const Rational cap = s.min_load(m) + k2 * eps * opt;
  cert.jobs_match = true;
  std::vector<bool> has_small(s.machine_count(), false);
  for (const auto& [id, e] : s.entries()) {
    if (!reference.contains(id)) throw std::invalid_argument("check_relaxed: schedules cover different instances");
    if (e.job.measure(m) >= threshold) {
      if (reference.machine_of(id) != e.machine) cert.jobs_match = false;
    } else {
      has_small[e.machine] = true;
    }
  }
  cert.spread_ok = true;
  for (MachineId i = 0; i < s.machine_count(); ++i) {
    if (has_small[i] && s.load(i, m) > cap) cert.spread_ok = false;
  }
  cert.witnessed = Rational(1) <= k1 && k1 <= k2 && cert.jobs_match && cert.spread_ok;
  return cert;
}

// Repairs s into a jump-optimal schedule: take out a violating job and reinsert
// it with Push on the lowest-index least loaded machine, pushing expelled jobs
// again until none are left.
inline Schedule jump_optimal_completion(Schedule s, std::size_t max_steps = 1'000'000) {
  std::size_t steps = 0;
  for (;;) {
    const Rational lo = s.min_load();
    std::optional<Job> violator;
    for (const auto& [id, e] : s.entries()) {
      if (s.load(e.machine) - e.job.rounded > lo && (!violator || larger_first(*violator, e.job))) {
        violator = e.job;
      }
    }
    if (!violator) return s;
    s.unassign(violator->id);
    std::set<Job, decltype(&larger_first)> queue(&larger_first);
    queue.insert(*violator);
    while (!queue.empty()) {
      if (++steps > max_steps) throw InvariantViolation("jump_optimal_completion: no convergence");
      const Job j = *queue.begin();
      queue.erase(queue.begin());
      const MachineId target = s.least_loaded().front();
      PushResult r = push(std::move(s), target, j);
      s = std::move(r.schedule);
      queue.insert(r.expelled.begin(), r.expelled.end());
    }
  }
}

// Maintains a relaxed jump-optimal schedule under job arrivals. Big jobs are
// inserted with Push into the big-job schedule; small jobs ride on top and are
// trimmed from any machine Push touched while it exceeds l_min + 2^ell.
struct JumpOptions {
  std::optional<Rational> ub_override;
  PushTarget target = PushTarget::LowestIndex;
};

class JumpSession {
 public:
  using Options = JumpOptions;

  JumpSession(std::size_t machines, Rational eps, Options options = {})
      : eps_(std::move(eps)), options_(std::move(options)), instance_(machines), schedule_(machines),
        context_(build_context(eps_, Rational(0))) {
    require_unit_fraction(eps_);
  }

  // Starts from an existing schedule of already-rounded jobs.
  static JumpSession resume(const Schedule& s, Rational eps, Options options = {}) {
    JumpSession session(s.machine_count(), std::move(eps), std::move(options));
    for (const Job& j : s.jobs()) {
      if (j.rounded != round_size(j.size, session.eps_)) {
        throw std::invalid_argument("JumpSession: job " + std::to_string(j.id) + " carries a foreign rounding");
      }
      session.instance_.add(j);
    }
    session.schedule_ = s;
    session.context_ = build_context(session.eps_, session.current_ub());
    return session;
  }

  MigrationLedger insert(JobId id, const Rational& size) {
    if (instance_.contains(id)) throw std::invalid_argument("insert: duplicate job id " + std::to_string(id));
    const Job jstar = make_job(id, size, eps_);
    instance_.add(jstar);
    context_ = build_context(eps_, current_ub());
    const RoundingContext& ctx = context_;

    const Schedule before = schedule_;
    Schedule s = schedule_;
    if (ctx.classify(jstar.rounded) == JobClass::Small) {
      s.assign(jstar, s.least_loaded().front());
    } else {
      const auto not_small = [&](const Job& j) { return !ctx.is_small(j); };
      std::set<Job, decltype(&larger_first)> big_queue(&larger_first);
      std::vector<Job> small_queue;
      big_queue.insert(jstar);
      while (!big_queue.empty()) {
        const Job j = *big_queue.begin();
        big_queue.erase(big_queue.begin());

        const Schedule big = s.restricted(not_small);
        const MachineId target = choose_push_target(big, j, options_.target);
        PushResult r = push(big, target, j);
        for (const Job& k : r.expelled) s.unassign(k.id);
        s.assign(j, target);

        while (holds_small(s, target, ctx) && s.load(target) > s.min_load() + ctx.small_threshold()) {
          small_queue.push_back(s.unassign(smallest_on(s, target).id));
        }
        big_queue.insert(r.expelled.begin(), r.expelled.end());
      }
      std::sort(small_queue.begin(), small_queue.end(), larger_first);
      list_schedule(s, small_queue);
    }

    schedule_ = std::move(s);
    MigrationLedger led = make_ledger(jstar, before, schedule_, ctx.ub());
    history_.push_back(led);
    return led;
  }

  [[nodiscard]] const Schedule& schedule() const { return schedule_; }
  [[nodiscard]] const Instance& instance() const { return instance_; }
  [[nodiscard]] const RoundingContext& context() const { return context_; }
  [[nodiscard]] const Rational& epsilon() const { return eps_; }
  [[nodiscard]] const Options& options() const { return options_; }
  [[nodiscard]] const std::vector<MigrationLedger>& history() const { return history_; }

 private:
  [[nodiscard]] Rational current_ub() const {
    return options_.ub_override ? *options_.ub_override : compute_ub(instance_);
  }

  static bool holds_small(const Schedule& s, MachineId i, const RoundingContext& ctx) {
    for (JobId id : s.job_ids_on(i)) {
      if (ctx.is_small(s.job(id))) return true;
    }
    return false;
  }

  static Job smallest_on(const Schedule& s, MachineId i) {
    std::vector<Job> jobs = s.jobs_on(i);
    return *std::min_element(jobs.begin(), jobs.end(), smaller_first);
  }

  Rational eps_;
  Options options_;
  Instance instance_;
  Schedule schedule_;
  RoundingContext context_;
  std::vector<MigrationLedger> history_;
};

}  // namespace mcover
