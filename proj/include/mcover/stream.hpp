#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcover/core.hpp"
#include "mcover/generators.hpp"
#include "mcover/jump.hpp"
#include "mcover/lpt.hpp"
#include "mcover/migration.hpp"
#include "mcover/online_lpt.hpp"
#include "mcover/oracle.hpp"
#include "mcover/rounding.hpp"

namespace mcover {

enum class Algorithm { JumpOnline, OnlineLpt, RecomputeLpt };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::JumpOnline: return "jump";
    case Algorithm::OnlineLpt: return "online-lpt";
    case Algorithm::RecomputeLpt: return "recompute-lpt";
  }
  return "?";
}

inline Algorithm parse_algorithm(const std::string& s) {
  if (s == "jump") return Algorithm::JumpOnline;
  if (s == "online-lpt") return Algorithm::OnlineLpt;
  if (s == "recompute-lpt") return Algorithm::RecomputeLpt;
  throw std::invalid_argument("unknown algorithm: " + s);
}

// Relabels the machines of fresh (an LPT schedule of the same jobs plus new
// ones) to keep as much of prev in place as possible: machines are matched by
// maximum retained original volume, and jobs of equal rounded size are
// interchangeable, so each matched machine keeps its own jobs of a size class
// first.
inline Schedule align_to_previous(const Schedule& prev, const Schedule& fresh) {
  const std::size_t m = fresh.machine_count();
  // class counts per fresh machine; class jobs per previous machine, largest first
  std::vector<std::map<Rational, std::size_t>> want(m);
  for (const auto& [id, e] : fresh.entries()) want[e.machine][e.job.rounded]++;
  std::vector<std::map<Rational, std::vector<Job>>> have(m);
  for (const auto& [id, e] : prev.entries()) have[e.machine][e.job.rounded].push_back(e.job);
  for (auto& per : have) {
    for (auto& [p, jobs] : per) {
      std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
        if (a.size != b.size) return b.size < a.size;
        return a.id < b.id;
      });
    }
  }

  std::vector<std::vector<Rational>> weight(m, std::vector<Rational>(m));
  for (MachineId i = 0; i < m; ++i) {
    for (MachineId k = 0; k < m; ++k) {
      for (const auto& [p, count] : want[i]) {
        auto it = have[k].find(p);
        if (it == have[k].end()) continue;
        const std::size_t keep = std::min(count, it->second.size());
        for (std::size_t t = 0; t < keep; ++t) weight[i][k] += it->second[t].size;
      }
    }
  }
  const std::vector<std::size_t> label = hungarian_max(weight);

  Schedule out(m);
  std::map<Rational, std::vector<Job>> pool;
  for (const Job& j : fresh.jobs()) pool[j.rounded].push_back(j);
  std::set<JobId> placed;
  std::vector<std::map<Rational, std::size_t>> left = want;
  for (MachineId i = 0; i < m; ++i) {
    const MachineId k = label[i];
    for (auto& [p, count] : left[i]) {
      auto it = have[k].find(p);
      if (it == have[k].end()) continue;
      for (const Job& j : it->second) {
        if (count == 0) break;
        out.assign(fresh.job(j.id), k);
        placed.insert(j.id);
        --count;
      }
    }
  }
  for (MachineId i = 0; i < m; ++i) {
    for (auto& [p, count] : left[i]) {
      for (const Job& j : pool[p]) {
        if (count == 0) break;
        if (placed.insert(j.id).second) {
          out.assign(j, label[i]);
          --count;
        }
      }
    }
  }
  return out;
}

// Plain LPT recomputed from scratch on every arrival, relabeled to keep as many
// jobs in place as possible.
class RecomputeLptSession {
 public:
  RecomputeLptSession(std::size_t machines, Rational eps)
      : eps_(std::move(eps)), instance_(machines), schedule_(machines) {
    require_unit_fraction(eps_);
  }

  static RecomputeLptSession resume(const Schedule& s, Rational eps) {
    RecomputeLptSession session(s.machine_count(), std::move(eps));
    for (const Job& j : s.jobs()) session.instance_.add(j);
    session.schedule_ = s;
    return session;
  }

  MigrationLedger insert(JobId id, const Rational& size) {
    if (instance_.contains(id)) throw std::invalid_argument("insert: duplicate job id " + std::to_string(id));
    const Job jstar = make_job(id, size, eps_);
    instance_.add(jstar);
    const Schedule before = schedule_;
    schedule_ = align_to_previous(before, lpt_schedule(instance_));
    MigrationLedger led = make_ledger(jstar, before, schedule_, compute_ub(instance_));
    history_.push_back(led);
    return led;
  }

  [[nodiscard]] const Schedule& schedule() const { return schedule_; }
  [[nodiscard]] const Instance& instance() const { return instance_; }
  [[nodiscard]] const std::vector<MigrationLedger>& history() const { return history_; }

 private:
  Rational eps_;
  Instance instance_;
  Schedule schedule_;
  std::vector<MigrationLedger> history_;
};

struct StreamRow {
  JobId arrival_id = 0;
  Rational arrival_size;
  Rational migrated_volume_rounded;
  Rational migrated_volume_original;
  Rational migration_factor;
  Rational min_load;
  Rational min_load_original;
  Rational ub;
  std::optional<Rational> opt_original;
  std::optional<Rational> ratio;
  std::optional<std::size_t> m_neq;
  std::optional<std::size_t> j_eq_total;
};

struct StreamReport {
  std::string family;
  Algorithm algorithm = Algorithm::OnlineLpt;
  Rational epsilon;
  std::size_t machines = 0;
  std::vector<StreamRow> rows;
  std::vector<MigrationLedger> ledgers;
  std::optional<Rational> max_ratio;
  bool unbounded_ratio = false;  // some arrival left a machine empty while OPT > 0
  Rational max_factor;
  std::optional<Schedule> final_schedule;
};

struct RunOptions {
  bool compute_opt = false;
  bool verify = false;
  std::size_t budget = kDefaultBudget;
};

namespace detail {

inline void verify_arrival(Algorithm algo, const MigrationLedger& led, const Schedule& after,
                           const Instance& inst, const RoundingContext* ctx) {
  after.audit();
  if (!led.consistent()) throw InvariantViolation("ledger totals disagree with its moves");
  switch (algo) {
    case Algorithm::JumpOnline:
      for (const auto& mv : led.moves) {
        if (led.arrival.rounded < mv.rounded) {
          throw InvariantViolation("robust structure: job " + std::to_string(mv.id) +
                                   " larger than the arrival was migrated");
        }
      }
      break;
    case Algorithm::OnlineLpt:
      if (!verify_big_restriction(after, inst, *ctx)) {
        throw InvariantViolation("big jobs do not form an LPT-solution");
      }
      if (!led.trace || !led.trace->growth_bound_holds()) {
        throw InvariantViolation("M!= grew faster than the jobs placed on M=");
      }
      for (const auto& mv : led.moves) {
        if (ctx->classify(mv.rounded) == JobClass::Huge) throw InvariantViolation("a huge job was migrated");
      }
      break;
    case Algorithm::RecomputeLpt:
      if (!profile_dominates(load_profile(lpt_schedule(inst.filtered([&](const Job& j) { return j.id != led.arrival.id; }))),
                             load_profile(after))) {
        throw InvariantViolation("LPT load profile decreased");
      }
      break;
  }
}

}  // namespace detail

// Replays a stream through one algorithm and records one row per arrival.
inline StreamReport run_stream(const StreamSpec& spec, Algorithm algo, const Rational& eps,
                               const RunOptions& options = {}) {
  require_unit_fraction(eps);
  StreamReport report;
  report.family = spec.family;
  report.algorithm = algo;
  report.epsilon = eps;
  report.machines = spec.machines;

  const Schedule start = initial_schedule(spec, eps);
  std::optional<JumpSession> jump;
  std::optional<OnlineLptSession> online;
  std::optional<RecomputeLptSession> recompute;
  switch (algo) {
    case Algorithm::JumpOnline:
      jump.emplace(JumpSession::resume(start, eps, {spec.ub_override, spec.push_target}));
      break;
    case Algorithm::OnlineLpt: online.emplace(OnlineLptSession::resume(start, eps)); break;
    case Algorithm::RecomputeLpt: recompute.emplace(RecomputeLptSession::resume(start, eps)); break;
  }
  const auto current = [&]() -> const Schedule& {
    if (jump) return jump->schedule();
    if (online) return online->schedule();
    return recompute->schedule();
  };
  const auto instance = [&]() -> const Instance& {
    if (jump) return jump->instance();
    if (online) return online->instance();
    return recompute->instance();
  };

  for (const StreamEntry& e : replay_order(spec)) {
    MigrationLedger led = jump ? jump->insert(e.id, e.size)
                               : online ? online->insert(e.id, e.size) : recompute->insert(e.id, e.size);
    if (options.verify) {
      const RoundingContext* ctx = online ? &online->context() : nullptr;
      detail::verify_arrival(algo, led, current(), instance(), ctx);
    }

    StreamRow row;
    row.arrival_id = e.id;
    row.arrival_size = e.size;
    row.migrated_volume_rounded = led.volume_rounded;
    row.migrated_volume_original = led.volume_original;
    row.migration_factor = led.factor;
    row.min_load = led.min_load;
    row.min_load_original = led.min_load_original;
    row.ub = led.ub;
    if (options.compute_opt) {
      row.opt_original = brute_force_opt(instance(), Measure::Original, options.budget);
      if (!led.min_load_original.is_zero()) {
        row.ratio = *row.opt_original / led.min_load_original;
      } else if (row.opt_original->is_zero()) {
        row.ratio = Rational(1);
      } else {
        report.unbounded_ratio = true;
      }
      if (row.ratio && (!report.max_ratio || *report.max_ratio < *row.ratio)) report.max_ratio = row.ratio;
    }
    if (led.trace) {
      row.m_neq = led.trace->final_m_neq();
      row.j_eq_total = led.trace->j_eq_total();
    }
    report.max_factor = max(report.max_factor, row.migration_factor);
    report.rows.push_back(std::move(row));
    report.ledgers.push_back(std::move(led));
  }
  report.final_schedule = current();
  return report;
}

}  // namespace mcover
