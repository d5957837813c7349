#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mcover {

using Integer = mpz_class;

// Exact rational number, always kept in lowest terms with a positive
// denominator. Serialized as "num/den", or "num" when den == 1.
class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I value) : v_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)

  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }

  Rational(const Integer& num, const Integer& den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }

  explicit Rational(const Integer& value) : v_(value) {}
  explicit Rational(mpq_class value) : v_(std::move(value)) { v_.canonicalize(); }

  // Accepts "a", "-a", "a/b". Whitespace is not allowed.
  static Rational parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("Rational: empty string");
    const auto slash = text.find('/');
    auto parse_int = [](std::string_view s, bool allow_sign) {
      if (s.empty()) throw std::invalid_argument("Rational: malformed number");
      std::size_t start = 0;
      if (allow_sign && (s[0] == '-' || s[0] == '+')) start = 1;
      if (start == s.size()) throw std::invalid_argument("Rational: malformed number");
      for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') {
          throw std::invalid_argument("Rational: malformed number '" + std::string(s) + "'");
        }
      }
      std::string digits(s.substr(s[0] == '+' ? 1 : 0));
      return Integer(digits, 10);
    };
    if (slash == std::string_view::npos) return Rational(parse_int(text, true));
    const Integer num = parse_int(text.substr(0, slash), true);
    const Integer den = parse_int(text.substr(slash + 1), false);
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    return Rational(num, den);
  }

  [[nodiscard]] std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  [[nodiscard]] const mpq_class& raw() const { return v_; }
  [[nodiscard]] Integer numerator() const { return v_.get_num(); }
  [[nodiscard]] Integer denominator() const { return v_.get_den(); }
  [[nodiscard]] int sign() const { return sgn(v_); }
  [[nodiscard]] bool is_zero() const { return sign() == 0; }
  [[nodiscard]] bool is_integer() const { return v_.get_den() == 1; }
  [[nodiscard]] double to_double() const { return v_.get_d(); }

  [[nodiscard]] Integer floor() const {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }

  [[nodiscard]] Integer ceil() const {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class v_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// 2^e for any integer e.
inline Rational pow2(long e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  return e >= 0 ? Rational(p) : Rational(Integer(1), p);
}

// Largest e with 2^e <= p. Requires p > 0.
inline long floor_log2(const Rational& p) {
  if (p.sign() <= 0) throw std::domain_error("floor_log2: argument must be positive");
  long e = static_cast<long>(mpz_sizeinbase(p.raw().get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(p.raw().get_den_mpz_t(), 2));
  while (pow2(e) > p) --e;
  while (pow2(e + 1) <= p) ++e;
  return e;
}

// Smallest e with 2^e >= p. Requires p > 0.
inline long ceil_log2(const Rational& p) {
  const long e = floor_log2(p);
  return pow2(e) == p ? e : e + 1;
}

}  // namespace mcover

template <>
struct std::hash<mcover::Rational> {
  std::size_t operator()(const mcover::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
