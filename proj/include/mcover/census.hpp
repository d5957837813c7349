#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "mcover/core.hpp"
#include "mcover/rounding.hpp"

namespace mcover {

// Size families compared by the census:
//   Arithmetic  - every 2^i + k*eps*2^i (the image of round_size),
//   Geometric   - every power of (1 + eps),
//   PowersOfTwo - every power of 2.
enum class CensusMode { Arithmetic, Geometric, PowersOfTwo };

struct CensusResult {
  std::size_t multisets = 0;        // including the empty multiset
  std::size_t distinct_totals = 0;  // including total 0
  bool all_distinct = true;         // no two multisets share a total
  std::map<Rational, std::size_t> totals;  // total -> number of multisets
};

// Admissible sizes of a family inside [size_floor, bound], largest first.
inline std::vector<Rational> census_sizes(CensusMode mode, const Rational& eps, const Rational& bound,
                                          const Rational& size_floor) {
  if (size_floor.sign() <= 0) throw std::invalid_argument("census: size floor must be positive");
  if (bound < size_floor) throw std::invalid_argument("census: size floor exceeds bound");
  std::vector<Rational> out;
  switch (mode) {
    case CensusMode::Arithmetic: {
      require_unit_fraction(eps);
      const long steps = eps.denominator().get_si();
      for (long i = floor_log2(bound); i >= floor_log2(size_floor); --i) {
        const Rational base = pow2(i);
        for (long k = steps - 1; k >= 0; --k) {
          Rational v = base + Rational(k) * eps * base;
          if (size_floor <= v && v <= bound) out.push_back(std::move(v));
        }
      }
      break;
    }
    case CensusMode::Geometric: {
      if (eps.sign() <= 0) throw std::invalid_argument("census: eps must be positive");
      const Rational ratio = Rational(1) + eps;
      std::vector<Rational> up, down;
      for (Rational v(1); v <= bound; v *= ratio) {
        if (size_floor <= v) up.push_back(v);
      }
      for (Rational v = Rational(1) / ratio; size_floor <= v; v /= ratio) {
        if (v <= bound) down.push_back(v);
      }
      out.assign(up.rbegin(), up.rend());
      out.insert(out.end(), down.begin(), down.end());
      break;
    }
    case CensusMode::PowersOfTwo: {
      for (long i = floor_log2(bound); i >= ceil_log2(size_floor); --i) out.push_back(pow2(i));
      break;
    }
  }
  return out;
}

namespace detail {

// Depth-first enumeration of all multisets over sizes (largest first) with
// total <= bound; visit receives every total once per multiset.
inline void enumerate_multisets(const std::vector<Rational>& sizes, const Rational& bound, std::size_t guard,
                                const std::function<void(const Rational&)>& visit) {
  std::size_t visited = 0;
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t k, const Rational& total) {
    if (k == sizes.size()) {
      if (++visited > guard) throw BudgetExceeded("census: search space guard exceeded");
      visit(total);
      return;
    }
    for (Rational t = total; t <= bound; t += sizes[k]) rec(k + 1, t);
  };
  rec(0, Rational(0));
}

}  // namespace detail

// Enumerates every multiset of admissible sizes >= size_floor whose total is at
// most bound, and reports how many distinct totals they realize.
inline CensusResult distinct_load_census(CensusMode mode, const Rational& eps, const Rational& bound,
                                         const Rational& size_floor, std::size_t guard = 2'000'000) {
  const std::vector<Rational> sizes = census_sizes(mode, eps, bound, size_floor);
  CensusResult result;
  detail::enumerate_multisets(sizes, bound, guard, [&](const Rational& total) {
    ++result.multisets;
    if (++result.totals[total] > 1) result.all_distinct = false;
  });
  result.distinct_totals = result.totals.size();
  return result;
}

// Number of multisets of admissible sizes >= size_floor summing exactly to target.
inline std::size_t count_multisets_with_total(CensusMode mode, const Rational& eps, const Rational& target,
                                              const Rational& size_floor, std::size_t guard = 2'000'000) {
  const std::vector<Rational> sizes = census_sizes(mode, eps, target, size_floor);
  std::size_t count = 0;
  detail::enumerate_multisets(sizes, target, guard, [&](const Rational& total) {
    if (total == target) ++count;
  });
  return count;
}

// C_0 = 1, C_{i+1} = 1 + C_i (C_i + 1) / 2: the merge-of-two-halves count for
// powers-of-two multisets with total 2^i. Compare with
// count_multisets_with_total(PowersOfTwo, ..., 2^i, 1), which enumerates.
inline Integer powers_of_two_recurrence(unsigned depth) {
  Integer c = 1;
  for (unsigned i = 0; i < depth; ++i) c = 1 + c * (c + 1) / 2;
  return c;
}

}  // namespace mcover
