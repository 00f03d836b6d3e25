#include "ultranorm/ratfunc.hpp"

#include <algorithm>
#include <stdexcept>

namespace ultranorm {

Poly::Poly(const Rational& c) {
  if (!ultranorm::is_zero(c)) coeffs_.push_back(c);
}

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!coeffs_.empty() && ultranorm::is_zero(coeffs_.back())) coeffs_.pop_back();
}

long Poly::order() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!ultranorm::is_zero(coeffs_[i])) return static_cast<long>(i);
  throw std::domain_error("order of the zero polynomial");
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return Poly(std::move(v));
}

Poly operator-(const Poly& a) {
  std::vector<Rational> v(a.coeffs_);
  for (auto& c : v) c = -c;
  return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (ultranorm::is_zero(a.coeffs_[i])) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Poly(std::move(v));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs_;
  std::vector<Rational> quo;
  if (a.degree() >= b.degree()) quo.assign(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rational(0));
  const std::size_t db = static_cast<std::size_t>(b.degree());
  while (rem.size() > db && !rem.empty()) {
    if (ultranorm::is_zero(rem.back())) {
      rem.pop_back();
      continue;
    }
    std::size_t shift = rem.size() - 1 - db;
    Rational f = rem.back() / b.leading();
    quo[shift] = f;
    for (std::size_t j = 0; j <= db; ++j) rem[shift + j] -= f * b.coeffs_[j];
    rem.pop_back();
  }
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  Rational lc = a.leading();
  for (auto& c : a.coeffs_) c /= lc;
  return a;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (ultranorm::is_zero(coeffs_[i])) continue;
    if (!out.empty()) out += " + ";
    out += "(" + ultranorm::to_string(coeffs_[i]) + ")";
    if (i == 1) out += "*T";
    if (i > 1) out += "*T^" + std::to_string(i);
  }
  return out;
}

RatFunc::RatFunc(Poly num, Poly den) {
  if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num.is_zero()) {
    num_ = Poly();
    den_ = Poly(Rational(1));
    return;
  }
  Poly g = Poly::gcd(num, den);
  if (g.degree() > 0) {
    num = Poly::divmod(num, g).first;
    den = Poly::divmod(den, g).first;
  }
  Rational lc = den.leading();
  Poly inv(Rational(1) / lc);
  num_ = num * inv;
  den_ = den * inv;
}

Rational RatFunc::constant_value() const {
  if (!is_constant()) throw std::domain_error("rational function is not constant: " + to_string());
  return num_.coeff(0) / den_.coeff(0);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_.degree() == 0 && b.den_.degree() == 0) return RatFunc(a.num_ + b.num_, Poly(Rational(1)));
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.den_.degree() == 0 && b.den_.degree() == 0) return RatFunc(a.num_ * b.num_, Poly(Rational(1)));
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw std::domain_error("rational function division by zero");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFunc::to_string() const {
  if (den_.degree() == 0) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace ultranorm
