#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "mcover/core.hpp"

namespace mcover {

inline constexpr std::size_t kDefaultBudget = 20'000'000;

namespace detail {

// Common denominator scaling: sizes * scale are integers. nullopt when the
// scaled total would not fit comfortably in 63 bits.
struct Scaled {
  Rational scale;
  std::vector<std::int64_t> base;
  std::vector<std::int64_t> jobs;
};

inline std::optional<Scaled> scale_to_integers(const std::vector<Rational>& base, const std::vector<Rational>& jobs) {
  Integer lcm = 1;
  for (const auto* v : {&base, &jobs}) {
    for (const Rational& x : *v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.denominator().get_mpz_t());
  }
  Scaled out{Rational(lcm), {}, {}};
  Integer total = 0;
  const Integer limit = Integer(1) << 60;
  for (const auto& [src, dst] : {std::pair{&base, &out.base}, std::pair{&jobs, &out.jobs}}) {
    for (const Rational& x : *src) {
      const Integer v = (x * out.scale).floor();
      total += v;
      if (total > limit) return std::nullopt;
      dst->push_back(v.get_si());
    }
  }
  return out;
}

template <class T>
struct VectorHash {
  std::size_t operator()(const std::vector<T>& v) const {
    std::size_t h = v.size();
    for (const T& x : v) h ^= std::hash<T>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Branch and bound for max-min placement of jobs on top of fixed base loads.
template <class T>
class CoverSearch {
 public:
  CoverSearch(std::vector<T> base, std::vector<T> jobs, std::size_t budget)
      : loads_(std::move(base)), jobs_(std::move(jobs)), budget_(budget) {
    std::sort(jobs_.begin(), jobs_.end(), std::greater<>());
    suffix_.assign(jobs_.size() + 1, T{});
    for (std::size_t k = jobs_.size(); k-- > 0;) suffix_[k] = suffix_[k + 1] + jobs_[k];
  }

  T solve() {
    best_ = greedy();
    dfs(0);
    return best_;
  }

 private:
  T greedy() const {
    std::vector<T> l = loads_;
    for (const T& p : jobs_) *std::min_element(l.begin(), l.end()) += p;
    return *std::min_element(l.begin(), l.end());
  }

  // Highest level L with sum_i (L - l_i)_+ <= remaining.
  T water_level(std::size_t k) const {
    std::vector<T> l = loads_;
    std::sort(l.begin(), l.end());
    T remaining = suffix_[k];
    std::size_t i = 1;
    for (; i < l.size(); ++i) {
      const T need = (l[i] - l[i - 1]) * T(static_cast<long>(i));
      if (remaining < need) break;
      remaining -= need;
      for (std::size_t j = 0; j < i; ++j) l[j] = l[i];
    }
    return l[0] + level_step(remaining, i);
  }

  static T level_step(const T& remaining, std::size_t width) {
    if constexpr (std::is_integral_v<T>) {
      return remaining / static_cast<T>(width);
    } else {
      return remaining / T(static_cast<long>(width));
    }
  }

  void dfs(std::size_t k) {
    if (++nodes_ > budget_) throw BudgetExceeded("brute force: node budget exceeded");
    if (k == jobs_.size()) {
      best_ = std::max(best_, *std::min_element(loads_.begin(), loads_.end()));
      return;
    }
    if (!(best_ < water_level(k))) return;

    std::vector<T> key = loads_;
    std::sort(key.begin(), key.end());
    key.push_back(T(static_cast<long>(k)));
    if (memo_.size() < kMemoCap && !memo_.insert(key).second) return;
    if (memo_.size() >= kMemoCap && memo_.count(key)) return;

    std::vector<std::size_t> order(loads_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return loads_[a] < loads_[b]; });
    std::optional<T> last;
    for (std::size_t i : order) {
      if (last && *last == loads_[i]) continue;
      last = loads_[i];
      loads_[i] += jobs_[k];
      dfs(k + 1);
      loads_[i] -= jobs_[k];
    }
  }

  static constexpr std::size_t kMemoCap = 4'000'000;

  std::vector<T> loads_;
  std::vector<T> jobs_;
  std::vector<T> suffix_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  T best_{};
  std::unordered_set<std::vector<T>, VectorHash<T>> memo_;
};

inline Rational cover_search(const std::vector<Rational>& base, const std::vector<Rational>& jobs,
                             std::size_t budget) {
  if (base.empty()) throw std::invalid_argument("brute force: need at least one machine");
  if (auto scaled = scale_to_integers(base, jobs)) {
    CoverSearch<std::int64_t> search(scaled->base, scaled->jobs, budget);
    return Rational(static_cast<long>(search.solve())) / scaled->scale;
  }
  CoverSearch<Rational> search(base, jobs, budget);
  return search.solve();
}

}  // namespace detail

// Exact optimum of machine covering on the given sizes.
inline Rational brute_force_opt(const std::vector<Rational>& sizes, std::size_t machines,
                                std::size_t budget = kDefaultBudget) {
  return detail::cover_search(std::vector<Rational>(machines), sizes, budget);
}

inline std::vector<Rational> sizes_of(const std::vector<Job>& jobs, Measure m = Measure::Original) {
  std::vector<Rational> out;
  out.reserve(jobs.size());
  for (const Job& j : jobs) out.push_back(j.measure(m));
  return out;
}

inline Rational brute_force_opt(const Instance& inst, Measure m = Measure::Original,
                                std::size_t budget = kDefaultBudget) {
  return brute_force_opt(sizes_of(inst.jobs(), m), inst.machine_count(), budget);
}

// Second optimum solver: dynamic program over sorted load vectors with loads
// truncated at total/m. Exponential in m; for cross-checking only.
inline Rational dp_opt(const std::vector<Rational>& sizes, std::size_t machines,
                       std::size_t state_cap = 2'000'000) {
  if (machines == 0) throw std::invalid_argument("dp_opt: need at least one machine");
  auto scaled = detail::scale_to_integers({}, sizes);
  if (!scaled) throw BudgetExceeded("dp_opt: sizes too fine for integer scaling");
  std::int64_t total = 0;
  for (auto p : scaled->jobs) total += p;
  const std::int64_t cap = total / static_cast<std::int64_t>(machines);

  std::set<std::vector<std::int64_t>> states{std::vector<std::int64_t>(machines, 0)};
  for (std::int64_t p : scaled->jobs) {
    std::set<std::vector<std::int64_t>> next;
    for (const auto& st : states) {
      for (std::size_t i = 0; i < machines; ++i) {
        if (i > 0 && st[i] == st[i - 1]) continue;
        auto v = st;
        v[i] = std::min(cap, v[i] + p);
        std::sort(v.begin(), v.end());
        next.insert(std::move(v));
        if (next.size() > state_cap) throw BudgetExceeded("dp_opt: state cap exceeded");
      }
    }
    states = std::move(next);
  }
  std::int64_t best = 0;
  for (const auto& st : states) best = std::max(best, st.front());
  return Rational(static_cast<long>(best)) / scaled->scale;
}

// Best minimum load reachable when the jobs of s stay where they are and only
// new_sizes are placed. Identical new jobs are placed greedily on a least loaded
// machine, which is optimal for identical items.
inline Rational best_without_migration(const Schedule& s, const std::vector<Rational>& new_sizes,
                                       std::size_t budget = kDefaultBudget) {
  std::vector<Rational> loads = s.loads(Measure::Original);
  const bool identical =
      std::all_of(new_sizes.begin(), new_sizes.end(), [&](const Rational& p) { return p == new_sizes.front(); });
  if (identical) {
    for (const Rational& p : new_sizes) *std::min_element(loads.begin(), loads.end()) += p;
    return *std::min_element(loads.begin(), loads.end());
  }
  return detail::cover_search(loads, new_sizes, budget);
}

// OPT / l_min of s, both under original sizes. 1 when both are zero.
inline Rational competitive_check(const Schedule& s, const Instance& inst, std::size_t budget = kDefaultBudget) {
  const Rational opt = brute_force_opt(inst, Measure::Original, budget);
  const Rational got = s.min_load(Measure::Original);
  if (got.is_zero()) {
    if (opt.is_zero()) return Rational(1);
    throw std::domain_error("competitive_check: schedule leaves a machine empty while OPT > 0");
  }
  return opt / got;
}

// Maximum-weight perfect matching on a square matrix; result[row] = column.
inline std::vector<std::size_t> hungarian_max(const std::vector<std::vector<Rational>>& weight) {
  const std::size_t n = weight.size();
  if (n == 0) return {};
  Rational big(1);
  for (const auto& row : weight) {
    if (row.size() != n) throw std::invalid_argument("hungarian_max: matrix must be square");
    for (const Rational& w : row) big += abs(w);
  }
  big *= Rational(4 * static_cast<long>(n + 2));
  // Minimize -weight with potentials (1-based, column 0 is a sentinel).
  std::vector<Rational> u(n + 1), v(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<Rational> minv(n + 1, big);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      Rational delta = big;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const Rational cur = -weight[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> result(n);
  for (std::size_t j = 1; j <= n; ++j) result[p[j] - 1] = j - 1;
  return result;
}

}  // namespace mcover
