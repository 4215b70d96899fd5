#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "progdist/util.hpp"

namespace progdist {

/// Arbitrary-precision rationals for sums whose denominators are products of
/// many primes.
using BigRational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact rational with 64-bit numerator and denominator. Intermediate
/// products are formed in 128 bits; a result that does not fit back into
/// 64 bits throws rather than wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(i64 n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(i64 n, i64 d) { assign(n, d); }

  [[nodiscard]] i64 num() const { return num_; }
  [[nodiscard]] i64 den() const { return den_; }
  [[nodiscard]] bool is_integer() const { return den_ == 1; }
  [[nodiscard]] double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  [[nodiscard]] std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Fractional part in [0, 1).
  [[nodiscard]] Rational frac() const {
    i64 r = num_ % den_;
    if (r < 0) r += den_;
    return Rational(r, den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    const i64 g = std::gcd(a.den_, b.den_);
    const i128 n = static_cast<i128>(a.num_) * (b.den_ / g) + static_cast<i128>(b.num_) * (a.den_ / g);
    const i128 d = static_cast<i128>(a.den_ / g) * b.den_;
    return from_wide(n, d);
  }
  friend Rational operator-(const Rational& a) { return from_wide(-static_cast<i128>(a.num_), a.den_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    const i64 g1 = std::gcd(a.num_ < 0 ? -a.num_ : a.num_, b.den_);
    const i64 g2 = std::gcd(b.num_ < 0 ? -b.num_ : b.num_, a.den_);
    const i128 n = static_cast<i128>(a.num_ / (g1 ? g1 : 1)) * (b.num_ / (g2 ? g2 : 1));
    const i128 d = static_cast<i128>(a.den_ / (g2 ? g2 : 1)) * (b.den_ / (g1 ? g1 : 1));
    return from_wide(n, d);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw Error("Rational: division by zero");
    return a * Rational(b.den_, b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<i128>(a.num_) * b.den_ <=> static_cast<i128>(b.num_) * a.den_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static Rational from_wide(i128 n, i128 d) {
    if (d == 0) throw Error("Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 a = n < 0 ? -n : n;
    i128 b = d;
    while (b != 0) {
      const i128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    constexpr i128 lim = static_cast<i128>(INT64_MAX);
    if (n > lim || n < -lim || d > lim) throw Error("Rational: 64-bit overflow");
    Rational r;
    r.num_ = static_cast<i64>(n);
    r.den_ = static_cast<i64>(d);
    return r;
  }
  void assign(i64 n, i64 d) { *this = from_wide(n, d); }

  i64 num_ = 0;
  i64 den_ = 1;
};

}  // namespace progdist
