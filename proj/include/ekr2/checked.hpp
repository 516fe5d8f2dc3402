#pragma once

// Overflow-checked 64-bit integer arithmetic and exact binomials.

#include <cstdint>
#include <numeric>

#include "ekr2/error.hpp"

namespace ekr2 {

inline std::int64_t add_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "64-bit addition");
  return r;
}

inline std::int64_t sub_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "64-bit subtraction");
  return r;
}

inline std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "64-bit multiplication");
  return r;
}

/// Binomial coefficient with the convention C(a,b) = 0 whenever b < 0,
/// a < 0 or b > a. Throws Overflow rather than wrapping.
inline std::int64_t binom(std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  // r * (a - b + i) / i stays integral at every step; divide by gcd first to
  // delay overflow.
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= b; ++i) {
    std::int64_t num = a - b + i;
    std::int64_t den = i;
    const std::int64_t g1 = std::gcd(r, den);
    r /= g1;
    den /= g1;
    num /= den;  // den now divides num
    r = mul_checked(r, num);
  }
  return r;
}

/// Exact rational with positive denominator, always reduced.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t v) : num(v), den(1) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw Error(ErrorKind::DomainError, "zero denominator");
    normalize();
  }

  bool is_integer() const { return den == 1; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    const std::int64_t g = std::gcd(a.den, b.den);
    const std::int64_t l = mul_checked(a.den / g, b.den);
    return Rational(add_checked(mul_checked(a.num, l / a.den), mul_checked(b.num, l / b.den)), l);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + Rational(-b.num, b.den); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    const std::int64_t g1 = std::gcd(a.num, b.den);
    const std::int64_t g2 = std::gcd(b.num, a.den);
    // denominators are positive, so both gcds are nonzero
    return Rational(mul_checked(a.num / g1, b.num / g2), mul_checked(a.den / g2, b.den / g1));
  }
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend auto operator<=>(const Rational& a, const Rational& b) {
    const __int128 l = static_cast<__int128>(a.num) * b.den;
    const __int128 r = static_cast<__int128>(b.num) * a.den;
    return l <=> r;
  }

 private:
  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
};

}  // namespace ekr2
