#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mcover/load_profile.hpp"
#include "mcover/rational.hpp"

namespace mcover {

using JobId = std::uint64_t;
using MachineId = std::size_t;
using LoadProfile = BasicLoadProfile<Rational>;

// Raised when an internal consistency check fails (audit, certificate,
// integrity check on a resumed schedule).
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// Raised when an exhaustive search exceeds its node budget.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Which size a computation reads: the rounded size used by every scheduling
// decision, or the true size used for reporting.
enum class Measure { Rounded, Original };

struct Job {
  JobId id = 0;
  Rational size;
  Rational rounded;

  Job() = default;
  Job(JobId id_, Rational size_, Rational rounded_)
      : id(id_), size(std::move(size_)), rounded(std::move(rounded_)) {
    if (size.sign() <= 0) throw std::invalid_argument("Job: size must be positive");
    if (rounded.sign() <= 0 || size < rounded) {
      throw std::invalid_argument("Job: rounded size must lie in (0, size]");
    }
  }

  [[nodiscard]] const Rational& measure(Measure m) const {
    return m == Measure::Rounded ? rounded : size;
  }

  friend bool operator==(const Job&, const Job&) = default;
};

// Non-increasing rounded size, then ascending id.
inline bool larger_first(const Job& a, const Job& b) {
  if (a.rounded != b.rounded) return b.rounded < a.rounded;
  return a.id < b.id;
}

// Non-decreasing rounded size, then ascending id.
inline bool smaller_first(const Job& a, const Job& b) {
  if (a.rounded != b.rounded) return a.rounded < b.rounded;
  return a.id < b.id;
}

class Instance {
 public:
  explicit Instance(std::size_t machines) : machines_(machines) {
    if (machines == 0) throw std::invalid_argument("Instance: need at least one machine");
  }

  Instance(std::size_t machines, const std::vector<Job>& jobs) : Instance(machines) {
    for (const Job& j : jobs) add(j);
  }

  void add(const Job& job) {
    if (!ids_.insert(job.id).second) {
      throw std::invalid_argument("Instance: duplicate job id " + std::to_string(job.id));
    }
    jobs_.push_back(job);
  }

  [[nodiscard]] bool contains(JobId id) const { return ids_.count(id) != 0; }
  [[nodiscard]] std::size_t machine_count() const { return machines_; }
  [[nodiscard]] const std::vector<Job>& jobs() const { return jobs_; }
  [[nodiscard]] std::size_t size() const { return jobs_.size(); }

  [[nodiscard]] Instance filtered(const std::function<bool(const Job&)>& keep) const {
    Instance out(machines_);
    for (const Job& j : jobs_) {
      if (keep(j)) out.add(j);
    }
    return out;
  }

 private:
  std::size_t machines_;
  std::vector<Job> jobs_;
  std::set<JobId> ids_;
};

// Assignment of jobs to machines with per-machine load bookkeeping under both
// rounded and original sizes. Single writer.
class Schedule {
 public:
  struct Entry {
    Job job;
    MachineId machine = 0;
  };

  explicit Schedule(std::size_t machines)
      : on_machine_(machines), rounded_(machines), original_(machines) {
    if (machines == 0) throw std::invalid_argument("Schedule: need at least one machine");
  }

  [[nodiscard]] std::size_t machine_count() const { return on_machine_.size(); }
  [[nodiscard]] std::size_t job_count() const { return entries_.size(); }
  [[nodiscard]] bool contains(JobId id) const { return entries_.count(id) != 0; }
  [[nodiscard]] const std::map<JobId, Entry>& entries() const { return entries_; }

  void assign(const Job& job, MachineId machine) {
    check_machine(machine);
    if (!entries_.emplace(job.id, Entry{job, machine}).second) {
      throw std::invalid_argument("Schedule: job " + std::to_string(job.id) + " already assigned");
    }
    on_machine_[machine].insert(job.id);
    rounded_[machine] += job.rounded;
    original_[machine] += job.size;
  }

  Job unassign(JobId id) {
    auto it = find(id);
    Job job = it->second.job;
    const MachineId m = it->second.machine;
    on_machine_[m].erase(id);
    rounded_[m] -= job.rounded;
    original_[m] -= job.size;
    entries_.erase(it);
    return job;
  }

  void move(JobId id, MachineId target) {
    check_machine(target);
    auto it = find(id);
    const MachineId from = it->second.machine;
    if (from == target) return;
    const Job& job = it->second.job;
    on_machine_[from].erase(id);
    rounded_[from] -= job.rounded;
    original_[from] -= job.size;
    on_machine_[target].insert(id);
    rounded_[target] += job.rounded;
    original_[target] += job.size;
    it->second.machine = target;
  }

  [[nodiscard]] MachineId machine_of(JobId id) const { return find(id)->second.machine; }
  [[nodiscard]] const Job& job(JobId id) const { return find(id)->second.job; }

  [[nodiscard]] const std::set<JobId>& job_ids_on(MachineId machine) const {
    check_machine(machine);
    return on_machine_[machine];
  }

  [[nodiscard]] std::vector<Job> jobs_on(MachineId machine) const {
    std::vector<Job> out;
    for (JobId id : job_ids_on(machine)) out.push_back(job(id));
    return out;
  }

  [[nodiscard]] std::vector<Job> jobs() const {
    std::vector<Job> out;
    out.reserve(entries_.size());
    for (const auto& [id, e] : entries_) out.push_back(e.job);
    return out;
  }

  [[nodiscard]] const Rational& load(MachineId machine, Measure m = Measure::Rounded) const {
    check_machine(machine);
    return m == Measure::Rounded ? rounded_[machine] : original_[machine];
  }

  [[nodiscard]] const std::vector<Rational>& loads(Measure m = Measure::Rounded) const {
    return m == Measure::Rounded ? rounded_ : original_;
  }

  [[nodiscard]] Rational min_load(Measure m = Measure::Rounded) const {
    const auto& l = loads(m);
    return *std::min_element(l.begin(), l.end());
  }

  [[nodiscard]] Rational max_load(Measure m = Measure::Rounded) const {
    const auto& l = loads(m);
    return *std::max_element(l.begin(), l.end());
  }

  // Least loaded machines in ascending index order.
  [[nodiscard]] std::vector<MachineId> least_loaded(Measure m = Measure::Rounded) const {
    const Rational lo = min_load(m);
    std::vector<MachineId> out;
    for (MachineId i = 0; i < machine_count(); ++i) {
      if (load(i, m) == lo) out.push_back(i);
    }
    return out;
  }

  // Copy holding only the jobs accepted by keep, on the same machines.
  [[nodiscard]] Schedule restricted(const std::function<bool(const Job&)>& keep) const {
    Schedule out(machine_count());
    for (const auto& [id, e] : entries_) {
      if (keep(e.job)) out.assign(e.job, e.machine);
    }
    return out;
  }

  // Recompute loads from the assignment and compare with the cached values.
  void audit() const {
    std::vector<Rational> r(machine_count()), o(machine_count());
    std::size_t listed = 0;
    for (MachineId i = 0; i < machine_count(); ++i) {
      for (JobId id : on_machine_[i]) {
        auto it = entries_.find(id);
        if (it == entries_.end() || it->second.machine != i) {
          throw InvariantViolation("Schedule audit: machine lists disagree with assignment");
        }
        r[i] += it->second.job.rounded;
        o[i] += it->second.job.size;
        ++listed;
      }
    }
    if (listed != entries_.size()) throw InvariantViolation("Schedule audit: job listed twice or missing");
    if (r != rounded_ || o != original_) throw InvariantViolation("Schedule audit: cached loads are stale");
  }

  friend bool operator==(const Schedule& a, const Schedule& b) {
    if (a.machine_count() != b.machine_count() || a.entries_.size() != b.entries_.size()) return false;
    for (const auto& [id, e] : a.entries_) {
      auto it = b.entries_.find(id);
      if (it == b.entries_.end() || it->second.machine != e.machine || !(it->second.job == e.job)) {
        return false;
      }
    }
    return true;
  }

 private:
  void check_machine(MachineId machine) const {
    if (machine >= on_machine_.size()) throw std::out_of_range("Schedule: machine index out of range");
  }

  std::map<JobId, Entry>::const_iterator find(JobId id) const {
    auto it = entries_.find(id);
    if (it == entries_.end()) throw std::out_of_range("Schedule: job " + std::to_string(id) + " not assigned");
    return it;
  }

  std::map<JobId, Entry>::iterator find(JobId id) {
    auto it = entries_.find(id);
    if (it == entries_.end()) throw std::out_of_range("Schedule: job " + std::to_string(id) + " not assigned");
    return it;
  }

  std::map<JobId, Entry> entries_;
  std::vector<std::set<JobId>> on_machine_;
  std::vector<Rational> rounded_;
  std::vector<Rational> original_;
};

inline LoadProfile load_profile(const Schedule& s, Measure m = Measure::Rounded) {
  return LoadProfile::from_unsorted(s.loads(m));
}

}  // namespace mcover
