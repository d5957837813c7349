#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "mcover/core.hpp"

namespace mcover {

struct MoveRecord {
  JobId id = 0;
  MachineId from = 0;
  MachineId to = 0;
  Rational size;
  Rational rounded;
};

// One Online LPT phase. h = 0 is the huge-job phase; q is unset there.
struct PhaseRecord {
  std::size_t h = 0;
  std::optional<Rational> q;
  std::vector<MachineId> m_neq;
  std::size_t j_eq = 0;        // list-scheduled jobs that landed on M=_{h-1}
  std::size_t m_neq_growth = 0;  // |M!=_h \ M!=_{h-1}|
};

struct PhaseTrace {
  std::vector<PhaseRecord> phases;

  [[nodiscard]] std::size_t j_eq_total() const {
    std::size_t total = 0;
    for (const auto& p : phases) total += p.j_eq;
    return total;
  }

  [[nodiscard]] std::size_t final_m_neq() const { return phases.empty() ? 0 : phases.back().m_neq.size(); }

  [[nodiscard]] bool growth_bound_holds() const {
    return std::all_of(phases.begin(), phases.end(), [](const PhaseRecord& p) { return p.m_neq_growth <= p.j_eq; });
  }
};

struct MigrationLedger {
  Job arrival;
  std::vector<MoveRecord> moves;
  Rational volume_rounded;
  Rational volume_original;
  Rational factor;  // volume_original / arrival.size
  Rational min_load;
  Rational min_load_original;
  Rational ub;
  std::optional<PhaseTrace> trace;
  std::vector<JobId> rebalanced;  // jobs moved by the small-job rebalancing loop, in order

  [[nodiscard]] bool consistent() const {
    Rational r, o;
    std::set<JobId> seen;
    for (const auto& mv : moves) {
      if (!seen.insert(mv.id).second || mv.from == mv.to) return false;
      r += mv.rounded;
      o += mv.size;
    }
    return r == volume_rounded && o == volume_original && factor == volume_original / arrival.size;
  }
};

// Every job present in both schedules whose machine differs.
inline std::vector<MoveRecord> diff_schedules(const Schedule& before, const Schedule& after) {
  std::vector<MoveRecord> out;
  for (const auto& [id, e] : before.entries()) {
    if (!after.contains(id)) continue;
    const MachineId to = after.machine_of(id);
    if (to != e.machine) out.push_back({id, e.machine, to, e.job.size, e.job.rounded});
  }
  return out;
}

inline MigrationLedger make_ledger(const Job& arrival, const Schedule& before, const Schedule& after,
                                   const Rational& ub) {
  MigrationLedger led;
  led.arrival = arrival;
  led.moves = diff_schedules(before, after);
  for (const auto& mv : led.moves) {
    led.volume_rounded += mv.rounded;
    led.volume_original += mv.size;
  }
  led.factor = led.volume_original / arrival.size;
  led.min_load = after.min_load();
  led.min_load_original = after.min_load(Measure::Original);
  led.ub = ub;
  return led;
}

}  // namespace mcover
