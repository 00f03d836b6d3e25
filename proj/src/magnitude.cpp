#include "ultranorm/magnitude.hpp"

#include <stdexcept>

namespace ultranorm {

Magnitude Magnitude::from_value(const Rational& value, unsigned long base) {
  if (sgn(value) < 0) throw std::invalid_argument("negative magnitude");
  return Magnitude(value, base);
}

Magnitude Magnitude::from_parts(const Rational& q, long n, unsigned long base) {
  if (sgn(q) <= 0) throw std::invalid_argument("magnitude coefficient must be positive");
  if (base == 0) {
    if (n != 0) throw std::invalid_argument("magnitude without uniformizer must have exponent 0");
    return Magnitude(q, 0);
  }
  return Magnitude(q * ultranorm::pow(Rational(base), -n), base);
}

long Magnitude::exponent() const {
  if (is_zero() || base_ == 0) return 0;
  // value = q * base^(-n)  =>  n = -v_base(value)
  return -valuation(value_, base_);
}

Rational Magnitude::coefficient() const {
  if (is_zero()) return Rational(0);
  return value_ * ultranorm::pow(Rational(base_ == 0 ? 1 : base_), exponent());
}

Magnitude Magnitude::with_base(unsigned long base) const {
  if (base_ != 0 && base != 0 && base != base_)
    throw std::invalid_argument("magnitude base mismatch");
  return Magnitude(value_, base);
}

unsigned long Magnitude::common_base(const Magnitude& a, const Magnitude& b) {
  if (a.base_ == 0) return b.base_;
  if (b.base_ == 0 || a.base_ == b.base_) return a.base_;
  throw std::invalid_argument("magnitudes over different uniformizers");
}

Magnitude operator*(const Magnitude& a, const Magnitude& b) {
  return Magnitude(a.value_ * b.value_, Magnitude::common_base(a, b));
}

Magnitude operator/(const Magnitude& a, const Magnitude& b) {
  if (b.is_zero()) throw std::domain_error("division by zero magnitude");
  return Magnitude(a.value_ / b.value_, Magnitude::common_base(a, b));
}

Magnitude Magnitude::pow(long e) const { return Magnitude(ultranorm::pow(value_, e), base_); }

std::string Magnitude::to_string() const {
  if (is_zero()) return "0";
  return ultranorm::to_string(coefficient()) + "*rho^" + std::to_string(exponent());
}

std::strong_ordering compare_root(const Magnitude& r, long n, const Magnitude& s, long m) {
  if (n <= 0 || m <= 0) throw std::invalid_argument("root index must be positive");
  Rational lhs = ultranorm::pow(r.value(), m);
  Rational rhs = ultranorm::pow(s.value(), n);
  int c = cmp(lhs, rhs);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

}  // namespace ultranorm
