#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "mcover/generators.hpp"
#include "mcover/rounding.hpp"

namespace mcover {

// "name:key=value,key=value" as used on the command line.
struct FamilyRef {
  std::string name;
  std::map<std::string, std::string> params;

  [[nodiscard]] std::optional<std::string> get(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
  }
};

inline FamilyRef parse_family_ref(const std::string& text) {
  FamilyRef ref;
  const auto colon = text.find(':');
  ref.name = text.substr(0, colon);
  if (ref.name.empty()) throw std::invalid_argument("empty family name");
  if (colon == std::string::npos) return ref;
  std::string rest = text.substr(colon + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    const auto comma = rest.find(',', pos);
    const std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw std::invalid_argument("bad family parameter '" + item + "'");
      if (!ref.params.emplace(item.substr(0, eq), item.substr(eq + 1)).second) {
        throw std::invalid_argument("family parameter given twice: " + item.substr(0, eq));
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return ref;
}

namespace detail {

inline long param_long(const FamilyRef& ref, const std::string& key, std::optional<long> fallback) {
  const auto v = ref.get(key);
  if (!v) {
    if (fallback) return *fallback;
    throw std::invalid_argument(ref.name + ": missing parameter " + key);
  }
  std::size_t used = 0;
  long out = 0;
  try {
    out = std::stol(*v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v->size()) throw std::invalid_argument(ref.name + ": " + key + " must be an integer");
  return out;
}

inline void allow_only(const FamilyRef& ref, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : ref.params) {
    bool ok = false;
    for (const char* allowed : keys) ok = ok || k == allowed;
    if (!ok) throw std::invalid_argument(ref.name + ": unknown parameter " + k);
  }
}

}  // namespace detail

// Families:
//   lpt-shift:k=K[,eps=1/N]        eps defaults to 1/(6K)
//   jump-lb:u=U,eps=1/N
//   17-16[:C=c]                     C defaults to 10; alias gen_17_16
//   swap-lb:k=K
//   random:seed=S,n=N[,m=M][,law=uniform-grid|heavy-tail|small-flood]
inline StreamSpec make_family(const std::string& text) {
  const FamilyRef ref = parse_family_ref(text);
  using detail::allow_only;
  using detail::param_long;
  if (ref.name == "lpt-shift") {
    allow_only(ref, {"k", "eps"});
    const long k = param_long(ref, "k", std::nullopt);
    if (k < 2) throw std::invalid_argument("lpt-shift: k must be at least 2");
    const Rational eps = ref.get("eps") ? Rational::parse(*ref.get("eps")) : Rational(1, 6 * k);
    return gen_lpt_shift(k, eps);
  }
  if (ref.name == "jump-lb") {
    allow_only(ref, {"u", "eps"});
    const long u = param_long(ref, "u", std::nullopt);
    if (!ref.get("eps")) throw std::invalid_argument("jump-lb: missing parameter eps");
    const Rational eps = Rational::parse(*ref.get("eps"));
    require_unit_fraction(eps);
    const long ell = u + 1 - floor_log2(Rational(1) / eps);
    if (eps * pow2(u + 1) != pow2(ell)) throw std::invalid_argument("jump-lb: 1/eps must be a power of two");
    return gen_jump_mig_lb(ell, u, eps);
  }
  if (ref.name == "17-16" || ref.name == "gen_17_16") {
    allow_only(ref, {"C", "c"});
    const auto c = ref.get("C") ? ref.get("C") : ref.get("c");
    return gen_17_16(c ? Rational::parse(*c) : Rational(10));
  }
  if (ref.name == "swap-lb") {
    allow_only(ref, {"k"});
    const long k = param_long(ref, "k", std::nullopt);
    if (k > 4) throw std::invalid_argument("swap-lb: k above 4 is too large to materialize");
    return gen_swap_lb(k).spec;
  }
  if (ref.name == "random") {
    allow_only(ref, {"seed", "n", "m", "law"});
    const long seed = param_long(ref, "seed", std::nullopt);
    const long n = param_long(ref, "n", std::nullopt);
    const long m = param_long(ref, "m", 3);
    if (seed < 0 || n < 0 || m < 1) throw std::invalid_argument("random: seed, n must be >= 0 and m >= 1");
    const SizeLaw law = ref.get("law") ? parse_size_law(*ref.get("law")) : SizeLaw::UniformGrid;
    return gen_random(static_cast<std::uint64_t>(seed), static_cast<std::size_t>(n), static_cast<std::size_t>(m),
                      law);
  }
  throw std::invalid_argument("unknown family: " + ref.name);
}

}  // namespace mcover
