#pragma once

// Slow, definition-level reference implementations used only by tests.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "mcover/mcover.hpp"

namespace mcover::oracle {

// Rounding by search: largest 2^e <= p, then the largest grid point below p.
inline Rational naive_round(const Rational& p, const Rational& eps) {
  Rational base(1);
  while (p < base) base /= Rational(2);
  while (!(p < base * Rational(2))) base *= Rational(2);
  Rational best = base;
  for (Rational v = base; v <= p; v += eps * base) best = v;
  return best;
}

// Every assignment of jobs to machines; visit gets machine per job.
inline void for_each_assignment(std::size_t n, std::size_t m,
                                const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> a(n, 0);
  for (;;) {
    visit(a);
    std::size_t i = 0;
    while (i < n && ++a[i] == m) a[i++] = 0;
    if (i == n) return;
  }
}

// Maximum min load over all m^n assignments.
inline Rational naive_opt(const std::vector<Rational>& sizes, std::size_t m) {
  Rational best;
  for_each_assignment(sizes.size(), m, [&](const std::vector<std::size_t>& a) {
    std::vector<Rational> loads(m);
    for (std::size_t j = 0; j < sizes.size(); ++j) loads[a[j]] += sizes[j];
    best = max(best, *std::min_element(loads.begin(), loads.end()));
  });
  return best;
}

// Canonical form of a schedule: the set of per-machine job-id sets, indexed by machine.
using Assignment = std::vector<std::set<JobId>>;

inline Assignment assignment_of(const Schedule& s) {
  Assignment out(s.machine_count());
  for (const auto& [id, e] : s.entries()) out[e.machine].insert(id);
  return out;
}

// All schedules LPT can produce: jobs in non-increasing rounded size, any
// order among equal sizes, any least loaded machine.
inline std::set<Assignment> all_lpt_outcomes(const Instance& inst) {
  std::map<Rational, std::vector<Job>, std::greater<>> classes;
  for (const Job& j : inst.jobs()) classes[j.rounded].push_back(j);
  std::vector<std::vector<Job>> order;
  for (auto& [p, jobs] : classes) order.push_back(jobs);

  std::set<Assignment> out;
  std::function<void(Schedule&, std::size_t, std::vector<bool>&)> rec = [&](Schedule& s, std::size_t cls,
                                                                            std::vector<bool>& used) {
    if (cls == order.size()) {
      out.insert(assignment_of(s));
      return;
    }
    const auto& jobs = order[cls];
    bool any = false;
    for (std::size_t t = 0; t < jobs.size(); ++t) {
      if (used[t]) continue;
      any = true;
      used[t] = true;
      for (MachineId i : s.least_loaded()) {
        s.assign(jobs[t], i);
        rec(s, cls, used);
        s.unassign(jobs[t].id);
      }
      used[t] = false;
    }
    if (!any) {
      std::vector<bool> next(cls + 1 < order.size() ? order[cls + 1].size() : 0, false);
      rec(s, cls + 1, next);
    }
  };
  Schedule s(inst.machine_count());
  std::vector<bool> used(order.empty() ? 0 : order[0].size(), false);
  rec(s, 0, used);
  return out;
}

inline detail::Weight naive_weight(const std::vector<Rational>& loads) {
  const Rational lo = *std::min_element(loads.begin(), loads.end());
  std::size_t above = 0;
  for (const auto& l : loads) above += l != lo ? 1 : 0;
  return {lo, above};
}

// Local optimality by applying every neighbor and comparing weights.
inline bool naive_jump_optimal(const Schedule& s) {
  const auto base = naive_weight(s.loads());
  for (const auto& [id, e] : s.entries()) {
    for (MachineId t = 0; t < s.machine_count(); ++t) {
      if (t == e.machine) continue;
      auto loads = s.loads();
      loads[e.machine] -= e.job.rounded;
      loads[t] += e.job.rounded;
      if (base < naive_weight(loads)) return false;
    }
  }
  return true;
}

inline bool naive_swap_optimal(const Schedule& s) {
  if (!naive_jump_optimal(s)) return false;
  const auto base = naive_weight(s.loads());
  for (const auto& [a, ea] : s.entries()) {
    for (const auto& [b, eb] : s.entries()) {
      if (b <= a || ea.machine == eb.machine) continue;
      auto loads = s.loads();
      loads[ea.machine] += eb.job.rounded - ea.job.rounded;
      loads[eb.machine] += ea.job.rounded - eb.job.rounded;
      if (base < naive_weight(loads)) return false;
    }
  }
  return true;
}

// Partitions of n into powers of two, counted by the standard DP.
inline std::size_t binary_partitions(std::size_t n) {
  std::vector<std::size_t> ways(n + 1, 0);
  ways[0] = 1;
  for (std::size_t part = 1; part <= n; part *= 2) {
    for (std::size_t v = part; v <= n; ++v) ways[v] += ways[v - part];
  }
  return ways[n];
}

inline Schedule random_schedule(std::mt19937_64& rng, std::size_t n, std::size_t m, const Rational& eps,
                                long max_units = 12, const Rational& quantum = Rational(1, 2)) {
  Schedule s(m);
  for (std::size_t j = 0; j < n; ++j) {
    const Rational size = quantum * Rational(static_cast<long>(1 + rng() % static_cast<std::uint64_t>(max_units)));
    s.assign(make_job(static_cast<JobId>(j), size, eps), static_cast<MachineId>(rng() % m));
  }
  return s;
}

}  // namespace mcover::oracle
