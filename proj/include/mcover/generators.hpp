#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcover/core.hpp"
#include "mcover/jump.hpp"
#include "mcover/rounding.hpp"

namespace mcover {

struct StreamEntry {
  JobId id = 0;
  Rational size;
  std::optional<MachineId> machine;  // preset placement of a base job

  friend bool operator==(const StreamEntry&, const StreamEntry&) = default;
};

// A machine count, base jobs present before the stream starts, and the ordered
// arrivals. Base jobs without a machine are replayed as arrivals ahead of the
// rest; placed base jobs form the starting schedule.
struct StreamSpec {
  std::string family;
  std::size_t machines = 1;
  std::vector<StreamEntry> base;
  std::vector<StreamEntry> arrivals;
  std::optional<Rational> ub_override;
  PushTarget push_target = PushTarget::LowestIndex;
  std::optional<Rational> epsilon;  // rounding under which the family is exact

  [[nodiscard]] bool has_placements() const {
    for (const auto& e : base) {
      if (e.machine) return true;
    }
    return false;
  }

  [[nodiscard]] std::vector<Rational> all_sizes() const {
    std::vector<Rational> out;
    for (const auto& e : base) out.push_back(e.size);
    for (const auto& e : arrivals) out.push_back(e.size);
    return out;
  }
};

// Schedule of the placed base jobs, rounded with eps.
inline Schedule initial_schedule(const StreamSpec& spec, const Rational& eps) {
  Schedule s(spec.machines);
  for (const auto& e : spec.base) {
    if (e.machine) s.assign(make_job(e.id, e.size, eps), *e.machine);
  }
  return s;
}

// Base jobs without a placement followed by the arrivals.
inline std::vector<StreamEntry> replay_order(const StreamSpec& spec) {
  std::vector<StreamEntry> out;
  for (const auto& e : spec.base) {
    if (!e.machine) out.push_back(e);
  }
  out.insert(out.end(), spec.arrivals.begin(), spec.arrivals.end());
  return out;
}

// k+1 unit jobs, pairs 1/2 + i*eps and 1/2 - (i+1)*eps for i < k, and k jobs of
// 1/2 - k*eps on 2k+1 machines; then one arrival of 1/2 + k*eps.
inline StreamSpec gen_lpt_shift(long k, const Rational& eps) {
  if (k < 2) throw std::invalid_argument("lpt-shift: k must be at least 2");
  if (eps.sign() <= 0 || Rational(6 * k) * eps > Rational(1)) {
    throw std::invalid_argument("lpt-shift: eps must lie in (0, 1/(6k)]");
  }
  StreamSpec spec;
  spec.family = "lpt-shift:k=" + std::to_string(k) + ",eps=" + eps.str();
  spec.machines = static_cast<std::size_t>(2 * k + 1);
  if (is_unit_fraction(eps)) spec.epsilon = eps;
  JobId id = 0;
  const Rational half(1, 2);
  for (long i = 0; i <= k; ++i) spec.base.push_back({id++, Rational(1), std::nullopt});
  for (long i = 0; i < k; ++i) {
    spec.base.push_back({id++, half + Rational(i) * eps, std::nullopt});
    spec.base.push_back({id++, half - Rational(i + 1) * eps, std::nullopt});
  }
  for (long i = 0; i < k; ++i) spec.base.push_back({id++, half - Rational(k) * eps, std::nullopt});
  spec.arrivals.push_back({id, half + Rational(k) * eps, std::nullopt});
  return spec;
}

// One machine per ladder size t < 2^u, each filled to 2^(u+1); then an arrival
// of size 2^u. Requires eps * 2^(u+1) = 2^ell. The optimum 2^(u+1) is attached
// as the upper bound, with the push rule that drives the cascade.
inline StreamSpec gen_jump_mig_lb(long ell, long u, const Rational& eps) {
  require_unit_fraction(eps);
  if (ell >= u) throw std::invalid_argument("jump-lb: need ell < u");
  if (eps * pow2(u + 1) != pow2(ell)) throw std::invalid_argument("jump-lb: need eps * 2^(u+1) = 2^ell");
  StreamSpec spec;
  spec.family = "jump-lb:u=" + std::to_string(u) + ",eps=" + eps.str();
  spec.ub_override = pow2(u + 1);
  spec.push_target = PushTarget::LargestSmallerJob;
  spec.epsilon = eps;
  const long steps = eps.denominator().get_si();
  JobId id = 0;
  MachineId machine = 0;
  for (long e = u - 1; e >= ell; --e) {
    const Rational base = pow2(e);
    for (long j = steps - 1; j >= 0; --j, ++machine) {
      spec.base.push_back({id++, base + Rational(j) * eps * base, machine});
      spec.base.push_back({id++, base + Rational(steps - j) * eps * base, machine});
      spec.base.push_back({id++, base, machine});
      for (long e2 = e + 2; e2 <= u; ++e2) spec.base.push_back({id++, pow2(e2), machine});
    }
  }
  spec.machines = machine;
  spec.arrivals.push_back({id, pow2(u), std::nullopt});
  return spec;
}

// Three machines holding 2,2,2,3,3,80/17 as (80/17+2 | 3+2 | 3+2), followed by
// equal small jobs of total 22/17, each below 1/c. The count is the smallest
// even n with 22/(17n) < 1/c, so the smalls can raise both machines at 5
// equally.
inline StreamSpec gen_17_16(const Rational& c) {
  if (c < Rational(1)) throw std::invalid_argument("17-16: C must be at least 1");
  StreamSpec spec;
  spec.family = "17-16:C=" + c.str();
  spec.machines = 3;
  const Rational mass(22, 17);
  long n = (mass * c).floor().get_si() + 1;
  if (n % 2 != 0) ++n;
  JobId id = 0;
  spec.base.push_back({id++, Rational(80, 17), 0});
  spec.base.push_back({id++, Rational(2), 0});
  spec.base.push_back({id++, Rational(3), 1});
  spec.base.push_back({id++, Rational(2), 1});
  spec.base.push_back({id++, Rational(3), 2});
  spec.base.push_back({id++, Rational(2), 2});
  for (long i = 0; i < n; ++i) spec.arrivals.push_back({id++, mass / Rational(n), std::nullopt});
  return spec;
}

// Jobs and the reference schedule of the swap-optimality family.
struct SwapFamily {
  long k = 0;
  std::vector<Integer> n;  // n[0..k]
  Rational delta;
  std::size_t machines = 0;
  Rational a(long i) const { return Rational(1, 2) + Rational(Integer(n[i] - 1)) * delta; }
  Rational b(long i) const { return Rational(1, 2) - Rational(Integer(n[i] - 1)) * delta; }
  Rational c(long i) const { return Rational(1, 5) + Rational(Integer(4 * n[i - 1])) * delta; }
  Rational d(long i) const {
    if (i == k) return Rational(1) / Rational(6 * static_cast<long>(machines) - 1);
    return Rational(1, 5) - Rational(n[i]) * delta;
  }
  StreamSpec spec;          // swap-optimal placement as base jobs
  std::vector<MachineId> opt_machine;  // placement reaching 1.7 - delta, by job id
};

inline SwapFamily gen_swap_lb(long k) {
  if (k < 2) throw std::invalid_argument("swap-lb: k must be at least 2");
  SwapFamily f;
  f.k = k;
  f.n.assign(k + 1, 0);
  for (long i = 1; i <= k; ++i) f.n[i] = 4 * f.n[i - 1] + 2;
  f.delta = Rational(Integer(1), Integer(30) * f.n[k]);
  Integer ten_k = 1;
  for (long i = 0; i < k; ++i) ten_k *= 10;
  f.machines = Integer(Integer(2) * (ten_k - 1)).get_ui();
  const auto pow10 = [](long e) {
    long v = 1;
    for (long i = 0; i < e; ++i) v *= 10;
    return v;
  };
  const long M = static_cast<long>(f.machines);

  StreamSpec& spec = f.spec;
  spec.family = "swap-lb:k=" + std::to_string(k);
  spec.machines = f.machines;
  JobId id = 0;
  MachineId swap_m = 0;   // machine cursor for the swap-optimal schedule
  MachineId opt_m = 0;    // machine cursor for the optimal schedule
  auto add = [&](const Rational& size, MachineId swap_machine, MachineId opt_machine) {
    spec.base.push_back({id++, size, swap_machine});
    f.opt_machine.push_back(opt_machine);
  };

  // Ones: pairs in the swap schedule, one per machine in the optimum.
  for (long i = 0; i < M; ++i) add(Rational(1), swap_m + i / 2, static_cast<MachineId>(i));
  swap_m += M / 2;

  // Swap schedule: a_i with two b_i on 6*10^(k-i) machines. Optimum: a_i with
  // d_i (i < k), a_k with M jobs d_k, b_i with c_i.
  std::vector<MachineId> a_opt_first(k + 1), bc_opt_first(k + 1);
  for (long i = 1; i <= k; ++i) {
    a_opt_first[i] = opt_m;
    opt_m += 6 * pow10(k - i);
  }
  for (long i = 1; i <= k; ++i) {
    bc_opt_first[i] = opt_m;
    opt_m += 12 * pow10(k - i);
  }
  for (long i = 1; i <= k; ++i) {
    const long count = 6 * pow10(k - i);
    for (long r = 0; r < count; ++r) {
      add(f.a(i), swap_m + r, a_opt_first[i] + r);
      add(f.b(i), swap_m + r, bc_opt_first[i] + 2 * r);
      add(f.b(i), swap_m + r, bc_opt_first[i] + 2 * r + 1);
    }
    swap_m += count;
  }
  // Six c_1 per machine on 2*10^(k-1) machines.
  {
    const long count = 2 * pow10(k - 1);
    for (long r = 0; r < count; ++r) {
      for (long t = 0; t < 6; ++t) add(f.c(1), swap_m + r, bc_opt_first[1] + 6 * r + t);
    }
    swap_m += count;
  }
  // c_(i+1) with five d_i on 12*10^(k-i-1) machines, i < k.
  for (long i = 1; i < k; ++i) {
    const long count = 12 * pow10(k - i - 1);
    for (long r = 0; r < count; ++r) {
      add(f.c(i + 1), swap_m + r, bc_opt_first[i + 1] + r);
      for (long t = 0; t < 5; ++t) add(f.d(i), swap_m + r, a_opt_first[i] + 5 * r + t);
    }
    swap_m += count;
  }
  // All d_k on the last machine; M of them per a_k machine in the optimum.
  for (long t = 0; t < 6 * M; ++t) add(f.d(k), swap_m, a_opt_first[k] + t / M);
  ++swap_m;

  if (swap_m != f.machines || opt_m != f.machines) {
    throw InvariantViolation("swap-lb: machine count identity violated");
  }
  return f;
}

enum class SizeLaw { UniformGrid, HeavyTailDyadic, SmallFlood };

inline const char* to_string(SizeLaw law) {
  switch (law) {
    case SizeLaw::UniformGrid: return "uniform-grid";
    case SizeLaw::HeavyTailDyadic: return "heavy-tail";
    case SizeLaw::SmallFlood: return "small-flood";
  }
  return "?";
}

inline SizeLaw parse_size_law(const std::string& s) {
  if (s == "uniform-grid" || s == "uniform") return SizeLaw::UniformGrid;
  if (s == "heavy-tail" || s == "dyadic") return SizeLaw::HeavyTailDyadic;
  if (s == "small-flood" || s == "flood") return SizeLaw::SmallFlood;
  throw std::invalid_argument("unknown size law: " + s);
}

// Quantum of the uniform-grid law.
inline Rational uniform_grid_quantum() { return Rational(1, 4); }

// Deterministic random stream. Uses raw mt19937_64 output so the stream is the
// same on every platform.
inline StreamSpec gen_random(std::uint64_t seed, std::size_t n, std::size_t m, SizeLaw law = SizeLaw::UniformGrid) {
  if (m == 0) throw std::invalid_argument("random: need at least one machine");
  std::mt19937_64 rng(seed);
  StreamSpec spec;
  spec.family = "random:seed=" + std::to_string(seed) + ",n=" + std::to_string(n) + ",m=" + std::to_string(m) +
                ",law=" + to_string(law);
  spec.machines = m;
  for (std::size_t i = 0; i < n; ++i) {
    Rational size;
    switch (law) {
      case SizeLaw::UniformGrid:
        size = uniform_grid_quantum() * Rational(static_cast<long>(1 + rng() % 32));
        break;
      case SizeLaw::HeavyTailDyadic: {
        const std::uint64_t r = rng();
        const long e = 3 - static_cast<long>(__builtin_ctzll(r | (1ULL << 7)));
        size = pow2(e) * (Rational(1) + Rational(static_cast<long>((r >> 8) % 16), 16));
        break;
      }
      case SizeLaw::SmallFlood: {
        const std::uint64_t r = rng();
        if (i < m || r % 8 == 0) {
          size = Rational(static_cast<long>(4 + r % 5));
        } else {
          size = Rational(static_cast<long>(1 + (r >> 3) % 7), 64);
        }
        break;
      }
    }
    spec.arrivals.push_back({static_cast<JobId>(i), size, std::nullopt});
  }
  return spec;
}

}  // namespace mcover
