#pragma once

#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ultranorm/errors.hpp"
#include "ultranorm/matrix.hpp"
#include "ultranorm/valued_field.hpp"

namespace ultranorm {

using Exponent = std::vector<unsigned>;

/// All exponent vectors of total degree n in m+1 variables, graded-lex
/// (x0 > x1 > ... ), e.g. (1, 2) -> x^2, xy, y^2.
std::vector<Exponent> monomial_basis(std::size_t m, unsigned n);

/// Binomial(n + m, m).
std::size_t section_dimension(std::size_t m, unsigned n);

/// Position of each exponent in monomial_basis(m, n).
class MonomialIndex {
 public:
  MonomialIndex(std::size_t m, unsigned n);
  const std::vector<Exponent>& monomials() const { return monomials_; }
  std::size_t size() const { return monomials_.size(); }
  std::size_t at(const Exponent& e) const;

 private:
  std::vector<Exponent> monomials_;
  std::map<Exponent, std::size_t> index_;
};

/// Homogeneous polynomial of fixed degree: an element of H^0(P^m, O(n)).
template <class K>
class BasicSection {
 public:
  BasicSection(std::size_t num_vars, unsigned degree) : num_vars_(num_vars), degree_(degree) {
    if (num_vars == 0) fail("dimension_mismatch", "sections need at least one variable");
  }

  static BasicSection variable(std::size_t num_vars, std::size_t i) {
    BasicSection s(num_vars, 1);
    Exponent e(num_vars, 0);
    e.at(i) = 1;
    s.set(e, K(1));
    return s;
  }
  static BasicSection constant(std::size_t num_vars, const K& c) {
    BasicSection s(num_vars, 0);
    s.set(Exponent(num_vars, 0), c);
    return s;
  }
  /// Linear form sum coeffs[i] x_i.
  static BasicSection linear(std::span<const K> coeffs) {
    BasicSection s(coeffs.size(), 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      Exponent e(coeffs.size(), 0);
      e[i] = 1;
      s.set(e, coeffs[i]);
    }
    return s;
  }
  static BasicSection from_vector(std::size_t num_vars, unsigned degree, const std::vector<Exponent>& monomials,
                                  std::span<const K> v) {
    if (v.size() != monomials.size()) fail("dimension_mismatch", "coefficient vector size mismatch");
    BasicSection s(num_vars, degree);
    for (std::size_t i = 0; i < v.size(); ++i) s.set(monomials[i], v[i]);
    return s;
  }

  std::size_t num_vars() const { return num_vars_; }
  unsigned degree() const { return degree_; }
  const std::map<Exponent, K>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  K coefficient(const Exponent& e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? K(0) : it->second;
  }

  void set(const Exponent& e, const K& c) {
    check_exponent(e);
    if (ultranorm::is_zero(c))
      coeffs_.erase(e);
    else
      coeffs_[e] = c;
  }
  void add(const Exponent& e, const K& c) {
    if (ultranorm::is_zero(c)) return;
    check_exponent(e);
    auto [it, inserted] = coeffs_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (ultranorm::is_zero(it->second)) coeffs_.erase(it);
    }
  }

  Vector<K> to_vector(const MonomialIndex& index) const {
    Vector<K> v(index.size(), K(0));
    for (const auto& [e, c] : coeffs_) v[index.at(e)] = c;
    return v;
  }

  K evaluate(std::span<const K> point) const {
    if (point.size() != num_vars_) fail("dimension_mismatch", "point has the wrong number of coordinates");
    K out(0);
    for (const auto& [e, c] : coeffs_) {
      K term = c;
      for (std::size_t i = 0; i < num_vars_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) term *= point[i];
      out += term;
    }
    return out;
  }

  friend BasicSection operator*(const BasicSection& a, const BasicSection& b) {
    if (a.num_vars_ != b.num_vars_) fail("dimension_mismatch", "sections in different variable counts");
    BasicSection out(a.num_vars_, a.degree_ + b.degree_);
    Exponent e(a.num_vars_);
    for (const auto& [ea, ca] : a.coeffs_)
      for (const auto& [eb, cb] : b.coeffs_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add(e, ca * cb);
      }
    return out;
  }
  friend BasicSection operator+(const BasicSection& a, const BasicSection& b) {
    if (a.num_vars_ != b.num_vars_ || a.degree_ != b.degree_)
      fail("dimension_mismatch", "adding sections of different shapes");
    BasicSection out = a;
    for (const auto& [e, c] : b.coeffs_) out.add(e, c);
    return out;
  }
  friend BasicSection operator-(const BasicSection& a, const BasicSection& b) {
    return a + b.scaled(K(-1));
  }
  BasicSection scaled(const K& c) const {
    BasicSection out(num_vars_, degree_);
    if (ultranorm::is_zero(c)) return out;
    for (const auto& [e, x] : coeffs_) out.coeffs_.emplace(e, x * c);
    return out;
  }
  friend bool operator==(const BasicSection& a, const BasicSection& b) {
    return a.num_vars_ == b.num_vars_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_exponent(const Exponent& e) const {
    if (e.size() != num_vars_) fail("dimension_mismatch", "exponent has the wrong length");
    unsigned total = 0;
    for (auto x : e) total += x;
    if (total != degree_) fail("degree_mismatch", "monomial degree differs from the section degree");
  }

  std::size_t num_vars_;
  unsigned degree_;
  std::map<Exponent, K> coeffs_;
};

using Section = BasicSection<Rational>;

template <class K>
BasicSection<K> power(const BasicSection<K>& s, unsigned d) {
  BasicSection<K> out = BasicSection<K>::constant(s.num_vars(), K(1));
  BasicSection<K> base = s;
  while (d > 0) {
    if (d & 1U) out = out * base;
    d >>= 1U;
    if (d > 0) base = base * base;
  }
  return out;
}

/// Substitutes x_k = sum_j map(k, j) t_j; map has num_vars rows.
template <class K>
BasicSection<K> substitute_linear(const BasicSection<K>& s, const Matrix<K>& map) {
  if (map.rows() != s.num_vars()) fail("dimension_mismatch", "substitution has the wrong number of rows");
  const std::size_t t = map.cols();
  std::vector<std::vector<BasicSection<K>>> powers(s.num_vars());
  for (std::size_t k = 0; k < s.num_vars(); ++k) {
    Vector<K> row = map.row(k);
    powers[k].push_back(BasicSection<K>::constant(t, K(1)));
    powers[k].push_back(BasicSection<K>::linear(row));
  }
  BasicSection<K> out(t, s.degree());
  for (const auto& [e, c] : s.coefficients()) {
    BasicSection<K> term = BasicSection<K>::constant(t, c);
    for (std::size_t k = 0; k < e.size(); ++k) {
      while (powers[k].size() <= e[k]) powers[k].push_back(powers[k].back() * powers[k][1]);
      if (e[k] > 0) term = term * powers[k][e[k]];
    }
    out = out + term;
  }
  return out;
}

/// Rational points or a linear subspace of P^m (m + 1 = num_vars).
class Subvariety {
 public:
  struct Points {
    std::vector<Vector<Rational>> points;
  };
  struct Linear {
    std::vector<Vector<Rational>> forms;
  };

  static Subvariety points(std::vector<Vector<Rational>> pts);
  static Subvariety linear(std::vector<Vector<Rational>> forms);

  bool is_points() const { return std::holds_alternative<Points>(data_); }
  const Points& as_points() const { return std::get<Points>(data_); }
  const Linear& as_linear() const { return std::get<Linear>(data_); }
  std::size_t num_vars() const { return num_vars_; }

  /// Checks distinctness / independence.
  void validate(const ValuedField& field) const;

  /// Basis (columns) of the linear subspace {y : L(y) = 0}; Linear only.
  Matrix<Rational> parametrization() const;

 private:
  Subvariety(std::variant<Points, Linear> data, std::size_t num_vars) : data_(std::move(data)), num_vars_(num_vars) {}
  std::variant<Points, Linear> data_;
  std::size_t num_vars_;
};

/// Divides by the first coordinate of maximal magnitude (so that coordinate
/// becomes 1 and all others have magnitude <= 1).
Vector<Rational> normalize_point(const ValuedField& field, std::span<const Rational> point);

/// Rows: points (as given), columns: monomial_basis(m, n).
Matrix<Rational> evaluation_matrix(std::span<const Vector<Rational>> points, std::size_t m, unsigned n);

/// Basis of ker(H^0(P^m, O(n)) -> H^0(Y, O(n)|_Y)) in monomial coordinates.
std::vector<Vector<Rational>> restriction_kernel(const ValuedField& field, const Subvariety& y, std::size_t m,
                                                 unsigned n);

/// Convenience: s evaluated at normalize_point(pt).
Rational evaluate_normalized(const ValuedField& field, const Section& s, std::span<const Rational> pt);

std::string to_string(const Exponent& e);

}  // namespace ultranorm
