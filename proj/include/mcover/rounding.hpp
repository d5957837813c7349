#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcover/core.hpp"
#include "mcover/lpt.hpp"

namespace mcover {

inline bool is_unit_fraction(const Rational& eps) {
  return eps.numerator() == 1 && eps.denominator() >= 2;
}

inline void require_unit_fraction(const Rational& eps) {
  if (!is_unit_fraction(eps)) {
    throw std::invalid_argument("epsilon must be 1/k for an integer k >= 2, got " + eps.str());
  }
}

// Rounds p down to the nearest 2^e + k*eps*2^e, where 2^e <= p < 2^(e+1).
// Independent of any estimate of the optimum, so a job's rounded size never
// changes after admission.
inline Rational round_size(const Rational& p, const Rational& eps) {
  require_unit_fraction(eps);
  if (p.sign() <= 0) throw std::invalid_argument("round_size: size must be positive, got " + p.str());
  const long e = floor_log2(p);
  const Rational base = pow2(e);
  const Rational step = eps * base;
  return base + Rational(Rational((p - base) / step).floor()) * step;
}

inline Job make_job(JobId id, const Rational& size, const Rational& eps) {
  return Job(id, size, round_size(size, eps));
}

enum class JobClass { Small, Big, Huge };

inline const char* to_string(JobClass c) {
  switch (c) {
    case JobClass::Small: return "small";
    case JobClass::Big: return "big";
    case JobClass::Huge: return "huge";
  }
  return "?";
}

// Size classes and the ladder of admissible big-job sizes for one upper bound
// ub on the optimum. Indices ell..u are the exponents i with eps*ub <= 2^i < ub;
// the ladder holds every 2^i + k*eps*2^i for those i, largest first.
class RoundingContext {
 public:
  static RoundingContext build(const Rational& eps, const Rational& ub) {
    require_unit_fraction(eps);
    if (ub.sign() < 0) throw std::invalid_argument("RoundingContext: ub must be non-negative");
    RoundingContext ctx;
    ctx.eps_ = eps;
    ctx.ub_ = ub;
    if (ub.is_zero()) return ctx;

    ctx.ell_ = ceil_log2(eps * ub);
    ctx.u_ = ceil_log2(ub) - 1;
    ctx.grid_ = eps * pow2(ctx.ell_);
    const long steps = eps.denominator().get_si();
    for (long i = ctx.u_; i >= ctx.ell_; --i) {
      const Rational base = pow2(i);
      for (long k = steps - 1; k >= 0; --k) ctx.ladder_.push_back(base + Rational(k) * eps * base);
    }
    return ctx;
  }

  [[nodiscard]] bool degenerate() const { return ub_.is_zero(); }
  [[nodiscard]] const Rational& epsilon() const { return eps_; }
  [[nodiscard]] const Rational& ub() const { return ub_; }
  [[nodiscard]] long ell() const { return require_nondegenerate(), ell_; }
  [[nodiscard]] long u() const { return require_nondegenerate(), u_; }
  [[nodiscard]] const Rational& grid() const { return require_nondegenerate(), grid_; }
  [[nodiscard]] const std::vector<Rational>& ladder() const { return ladder_; }

  // 2^ell: jobs below are small.
  [[nodiscard]] Rational small_threshold() const { return pow2(ell()); }
  // 2^(u+1): jobs at or above are huge.
  [[nodiscard]] Rational huge_threshold() const { return pow2(u() + 1); }

  [[nodiscard]] JobClass classify(const Rational& rounded) const {
    if (degenerate()) return JobClass::Huge;
    if (rounded < small_threshold()) return JobClass::Small;
    if (rounded < huge_threshold()) return JobClass::Big;
    return JobClass::Huge;
  }

  [[nodiscard]] bool is_small(const Job& j) const { return classify(j.rounded) == JobClass::Small; }

  // 1-based ladder position of a big size, nullopt for sizes off the ladder.
  [[nodiscard]] std::optional<std::size_t> ladder_index(const Rational& rounded) const {
    for (std::size_t h = 0; h < ladder_.size(); ++h) {
      if (ladder_[h] == rounded) return h + 1;
    }
    return std::nullopt;
  }

 private:
  void require_nondegenerate() const {
    if (degenerate()) throw std::logic_error("RoundingContext: degenerate context (ub = 0) has no index range");
  }

  Rational eps_;
  Rational ub_;
  long ell_ = 0;
  long u_ = 0;
  Rational grid_;
  std::vector<Rational> ladder_;
};

inline RoundingContext build_context(const Rational& eps, const Rational& ub) {
  return RoundingContext::build(eps, ub);
}

inline JobClass classify(const Rational& rounded, const RoundingContext& ctx) { return ctx.classify(rounded); }

// Twice the minimum load of LPT on the rounded sizes. Zero when LPT leaves a
// machine empty.
inline Rational compute_ub(const Instance& inst) {
  if (inst.size() < inst.machine_count()) return Rational(0);
  return Rational(2) * lpt_schedule(inst).min_load();
}

}  // namespace mcover
