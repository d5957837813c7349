#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mcover/core.hpp"
#include "mcover/jump.hpp"
#include "mcover/lpt.hpp"
#include "mcover/migration.hpp"
#include "mcover/rounding.hpp"

namespace mcover {

// True iff the big and huge jobs of s (w.r.t. ctx) form an LPT-solution.
inline bool verify_big_restriction(const Schedule& s, const Instance& inst, const RoundingContext& ctx) {
  const auto not_small = [&](const Job& j) { return !ctx.is_small(j); };
  return is_lpt_solution(s.restricted(not_small), inst.filtered(not_small));
}

// An LPT-solution that agrees with s on every big and huge job: the big part of
// s followed by list-scheduling the small jobs in LPT order. s's big part must
// itself be an LPT-solution.
inline Schedule lpt_reference(const Schedule& s, const Instance& inst, const RoundingContext& ctx) {
  if (!verify_big_restriction(s, inst, ctx)) {
    throw InvariantViolation("lpt_reference: big jobs do not form an LPT-solution");
  }
  Schedule ref = s.restricted([&](const Job& j) { return !ctx.is_small(j); });
  list_schedule(ref, lpt_order(inst.filtered([&](const Job& j) { return ctx.is_small(j); }).jobs()));
  return ref;
}

// Maintains an LPT-solution on big jobs with small jobs balanced on top. Each
// arrival rebuilds the schedule size class by size class, copying the previous
// placement on machines whose larger jobs are unchanged and steering
// list-scheduling ties toward machines that already differ.
struct OnlineLptOptions {
  bool integrity_check = true;
};

class OnlineLptSession {
 public:
  using Options = OnlineLptOptions;

  OnlineLptSession(std::size_t machines, Rational eps, Options options = {})
      : eps_(std::move(eps)), options_(options), instance_(machines), schedule_(machines),
        context_(build_context(eps_, Rational(0))) {
    require_unit_fraction(eps_);
  }

  static OnlineLptSession resume(const Schedule& s, Rational eps, Options options = {}) {
    OnlineLptSession session(s.machine_count(), std::move(eps), options);
    for (const Job& j : s.jobs()) {
      if (j.rounded != round_size(j.size, session.eps_)) {
        throw std::invalid_argument("OnlineLptSession: job " + std::to_string(j.id) + " carries a foreign rounding");
      }
      session.instance_.add(j);
    }
    session.schedule_ = s;
    session.context_ = build_context(session.eps_, compute_ub(session.instance_));
    return session;
  }

  MigrationLedger insert(JobId id, const Rational& size) {
    if (instance_.contains(id)) throw std::invalid_argument("insert: duplicate job id " + std::to_string(id));
    const Job jstar = make_job(id, size, eps_);
    Instance next = instance_;
    next.add(jstar);
    const RoundingContext ctx = build_context(eps_, compute_ub(next));

    const Schedule& prev = schedule_;
    if (options_.integrity_check && !verify_big_restriction(prev, instance_, ctx)) {
      throw InvariantViolation("OnlineLptSession: current schedule is not an LPT-solution on its big jobs");
    }

    const std::size_t m = prev.machine_count();
    Schedule s(m);
    PhaseTrace trace;

    // Phase classes: huge jobs, then one class per ladder size.
    std::vector<std::vector<Job>> classes(ctx.ladder().size() + 1);
    std::vector<Job> small;
    for (const Job& j : next.jobs()) {
      switch (ctx.classify(j.rounded)) {
        case JobClass::Huge: classes[0].push_back(j); break;
        case JobClass::Big: classes[*ctx.ladder_index(j.rounded)].push_back(j); break;
        case JobClass::Small: small.push_back(j); break;
      }
    }

    std::vector<bool> equal(m, true);
    std::vector<std::set<JobId>> seen_prev(m), seen_next(m);
    for (std::size_t h = 0; h < classes.size(); ++h) {
      std::vector<Job>& jobs = classes[h];
      std::sort(jobs.begin(), jobs.end(), larger_first);

      std::set<MachineId> differing;
      for (MachineId i = 0; i < m; ++i) {
        if (!equal[i]) differing.insert(i);
      }

      std::vector<Job> rest;
      for (const Job& j : jobs) {
        if (prev.contains(j.id) && equal[prev.machine_of(j.id)]) {
          s.assign(j, prev.machine_of(j.id));
        } else {
          rest.push_back(j);
        }
      }

      PhaseRecord rec;
      rec.h = h;
      if (h > 0) rec.q = ctx.ladder()[h - 1];
      const TieBreak tb = TieBreak::prefer(differing);
      for (const Job& j : rest) {
        const MachineId target = tb.choose(s.least_loaded());
        s.assign(j, target);
        if (equal[target]) ++rec.j_eq;
      }

      for (const Job& j : jobs) {
        if (prev.contains(j.id)) seen_prev[prev.machine_of(j.id)].insert(j.id);
        seen_next[s.machine_of(j.id)].insert(j.id);
      }
      for (MachineId i = 0; i < m; ++i) {
        const bool now_equal = seen_prev[i] == seen_next[i];
        if (!now_equal) {
          rec.m_neq.push_back(i);
          if (equal[i]) ++rec.m_neq_growth;
        }
        equal[i] = now_equal;
      }
      trace.phases.push_back(std::move(rec));
    }

    std::vector<Job> loose;
    for (const Job& j : small) {
      if (prev.contains(j.id) && equal[prev.machine_of(j.id)]) {
        s.assign(j, prev.machine_of(j.id));
      } else {
        loose.push_back(j);
      }
    }
    std::sort(loose.begin(), loose.end(), larger_first);
    list_schedule(s, loose);

    std::vector<JobId> rebalanced;
    if (!ctx.degenerate()) rebalance(s, ctx, rebalanced);

    const Schedule before = schedule_;
    instance_ = std::move(next);
    context_ = ctx;
    schedule_ = std::move(s);
    MigrationLedger led = make_ledger(jstar, before, schedule_, ctx.ub());
    led.trace = std::move(trace);
    led.rebalanced = std::move(rebalanced);
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
  // While some machine holding a small job exceeds l_min + 2^ell, move the
  // smallest job of the heaviest such machine to a least loaded machine.
  static void rebalance(Schedule& s, const RoundingContext& ctx, std::vector<JobId>& moved) {
    const std::size_t cap = s.job_count() * s.machine_count() + 1;
    for (;;) {
      std::optional<MachineId> heaviest;
      for (MachineId i = 0; i < s.machine_count(); ++i) {
        bool has_small = false;
        for (JobId id : s.job_ids_on(i)) {
          if (ctx.is_small(s.job(id))) {
            has_small = true;
            break;
          }
        }
        if (has_small && (!heaviest || s.load(*heaviest) < s.load(i))) heaviest = i;
      }
      if (!heaviest || s.load(*heaviest) <= s.min_load() + ctx.small_threshold()) return;
      if (moved.size() >= cap) throw InvariantViolation("OnlineLptSession: rebalancing does not terminate");
      std::vector<Job> jobs = s.jobs_on(*heaviest);
      const Job j = *std::min_element(jobs.begin(), jobs.end(), smaller_first);
      s.move(j.id, s.least_loaded().front());
      moved.push_back(j.id);
    }
  }

  Rational eps_;
  Options options_;
  Instance instance_;
  Schedule schedule_;
  RoundingContext context_;
  std::vector<MigrationLedger> history_;
};

}  // namespace mcover
