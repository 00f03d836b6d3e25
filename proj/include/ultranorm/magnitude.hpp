#pragma once

#include <compare>
#include <string>

#include "ultranorm/rational.hpp"

namespace ultranorm {

/// Exact non-negative real of the form q * rho^n, rho = 1/base.
///
/// The value is stored as a single rational; (q, n) are derived on demand so
/// that q carries no factor of the base prime. base == 0 means the profile has
/// no uniformizer (trivial valuation): then n is always 0 and q is the value.
/// Magnitudes with different nonzero bases never mix.
class Magnitude {
 public:
  Magnitude() = default;  // zero, no base

  static Magnitude zero(unsigned long base = 0) { return Magnitude(Rational(0), base); }
  static Magnitude one(unsigned long base = 0) { return Magnitude(Rational(1), base); }
  /// value must be >= 0.
  static Magnitude from_value(const Rational& value, unsigned long base = 0);
  /// q * base^(-n), q > 0.
  static Magnitude from_parts(const Rational& q, long n, unsigned long base);

  bool is_zero() const { return sgn(value_) == 0; }
  const Rational& value() const { return value_; }
  unsigned long base() const { return base_; }
  Rational coefficient() const;
  long exponent() const;

  Magnitude with_base(unsigned long base) const;

  friend Magnitude operator*(const Magnitude& a, const Magnitude& b);
  friend Magnitude operator/(const Magnitude& a, const Magnitude& b);
  Magnitude& operator*=(const Magnitude& o) { return *this = *this * o; }
  Magnitude pow(long e) const;

  friend bool operator==(const Magnitude& a, const Magnitude& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Magnitude& a, const Magnitude& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// "0" or "q*rho^n".
  std::string to_string() const;

 private:
  Magnitude(Rational value, unsigned long base) : value_(std::move(value)), base_(base) {}
  static unsigned long common_base(const Magnitude& a, const Magnitude& b);

  Rational value_{0};
  unsigned long base_ = 0;
};

inline const Magnitude& max(const Magnitude& a, const Magnitude& b) { return a < b ? b : a; }

/// r^(1/n) <=> s^(1/m) compared exactly via r^m vs s^n (r, s > 0, n, m >= 1).
std::strong_ordering compare_root(const Magnitude& r, long n, const Magnitude& s, long m);

}  // namespace ultranorm
