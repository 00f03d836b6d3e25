#pragma once

// Shared random generators and independent oracles for the test suites.
// Oracles here avoid the library's own algorithms on purpose: valuations by
// repeated division, factorizations by trial division, norms by brute force.

#include <map>
#include <random>
#include <vector>

#include "ultranorm/magnitude.hpp"
#include "ultranorm/matrix.hpp"
#include "ultranorm/normed_space.hpp"
#include "ultranorm/valued_field.hpp"

namespace testkit {

using ultranorm::Integer;
using ultranorm::Magnitude;
using ultranorm::Rational;
using ultranorm::ValuedField;
using ultranorm::Vector;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  bool coin() { return uniform(0, 1) == 1; }

  /// num / den with |num| <= bound, 1 <= den <= bound.
  Rational rational(long bound = 20) {
    Rational r(Integer(uniform(-bound, bound)), Integer(uniform(1, bound)));
    r.canonicalize();
    return r;
  }
  Rational nonzero_rational(long bound = 20) {
    for (;;) {
      Rational r = rational(bound);
      if (sgn(r) != 0) return r;
    }
  }
  /// Unit times p^k, k in [-spread, spread]; rich in valuations.
  Rational padic_rational(unsigned long p, long spread = 3) {
    Rational r = nonzero_rational(9);
    return r * ultranorm::pow(Rational(p), uniform(-spread, spread));
  }
  Rational field_rational(const ValuedField& f) {
    if (f.kind() == ultranorm::FieldKind::padic) return coin() ? padic_rational(f.prime()) : Rational(0);
    return uniform(0, 3) == 0 ? Rational(0) : nonzero_rational(5);
  }
  Vector<Rational> vector(const ValuedField& f, std::size_t n) {
    Vector<Rational> v(n);
    for (auto& x : v) x = field_rational(f);
    return v;
  }
  /// Positive weight: p-power times a small unit (or a small rational for trivial fields).
  Magnitude weight(const ValuedField& f) {
    if (f.kind() == ultranorm::FieldKind::padic) {
      Rational unit(Integer(uniform(1, 7)), Integer(uniform(1, 5)));
      unit.canonicalize();
      return f.magnitude(unit * ultranorm::pow(Rational(f.prime()), uniform(-2, 2)));
    }
    Rational w(Integer(uniform(1, 6)), Integer(uniform(1, 4)));
    w.canonicalize();
    return f.magnitude(w);
  }
  Vector<Rational> basis_column(const ValuedField& f, std::size_t n) { return vector(f, n); }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

/// v_p by repeated exact division.
inline long naive_valuation(Integer x, unsigned long p) {
  long v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

/// |x| as a plain rational, computed without Magnitude.
inline Rational oracle_abs(const ValuedField& f, const Rational& x) {
  if (sgn(x) == 0) return 0;
  if (f.kind() != ultranorm::FieldKind::padic) return 1;
  long v = naive_valuation(x.get_num(), f.prime()) - naive_valuation(x.get_den(), f.prime());
  return ultranorm::pow(Rational(f.prime()), -v);
}

/// Prime factorization of |x| by trial division.
inline std::map<unsigned long, long> factor(Integer x) {
  std::map<unsigned long, long> out;
  if (x < 0) x = -x;
  for (unsigned long d = 2; Integer(d) * d <= x; ++d)
    while (x % d == 0) {
      ++out[d];
      x /= d;
    }
  if (x > 1) ++out[x.get_ui()];
  return out;
}

/// Exponent vector of a positive rational.
inline std::map<unsigned long, long> factor(const Rational& r) {
  auto out = factor(Integer(r.get_num()));
  for (auto [p, e] : factor(Integer(r.get_den()))) out[p] -= e;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

/// ||sum a_i g_i|| evaluated as a plain rational through an explicit
/// representation (basis B, weights w): coordinates by Cramer-free solve.
inline Rational oracle_norm(const ultranorm::NormedSpace& space, const Vector<Rational>& v) {
  auto c = ultranorm::solve(space.basis(), std::span<const Rational>(v));
  Rational best = 0;
  for (std::size_t i = 0; i < c->size(); ++i) {
    Rational t = oracle_abs(space.field(), (*c)[i]) * space.weights()[i].value();
    if (t > best) best = t;
  }
  return best;
}

/// oracle_norm with the change of basis inverted once.
class OracleNorm {
 public:
  explicit OracleNorm(const ultranorm::NormedSpace& space)
      : field_(space.field()), inverse_(*ultranorm::inverse(space.basis())) {
    for (const auto& w : space.weights()) weights_.push_back(w.value());
  }
  Rational operator()(const Vector<Rational>& v) const {
    Rational best = 0;
    for (std::size_t i = 0; i < inverse_.rows(); ++i) {
      Rational c = 0;
      for (std::size_t j = 0; j < v.size(); ++j) c += inverse_(i, j) * v[j];
      Rational t = oracle_abs(field_, c) * weights_[i];
      if (t > best) best = t;
    }
    return best;
  }

 private:
  ValuedField field_;
  ultranorm::Matrix<Rational> inverse_;
  std::vector<Rational> weights_;
};

/// Random invertible basis with random weights.
inline ultranorm::NormedSpace random_space(Rng& rng, const ValuedField& f, std::size_t dim) {
  for (;;) {
    ultranorm::Matrix<Rational> b(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) b(i, j) = rng.field_rational(f);
    if (sgn(ultranorm::determinant(b)) == 0) continue;
    std::vector<Magnitude> w;
    for (std::size_t i = 0; i < dim; ++i) w.push_back(rng.weight(f));
    return ultranorm::NormedSpace(f, b, w);
  }
}

}  // namespace testkit
