#include "ultranorm/sections.hpp"

#include <algorithm>

namespace ultranorm {

namespace {

void fill_monomials(std::size_t var, std::size_t num_vars, unsigned remaining, Exponent& cur,
                    std::vector<Exponent>& out) {
  if (var + 1 == num_vars) {
    cur[var] = remaining;
    out.push_back(cur);
    return;
  }
  for (unsigned k = remaining + 1; k-- > 0;) {
    cur[var] = k;
    fill_monomials(var + 1, num_vars, remaining - k, cur, out);
  }
}

}  // namespace

std::vector<Exponent> monomial_basis(std::size_t m, unsigned n) {
  std::vector<Exponent> out;
  Exponent cur(m + 1, 0);
  fill_monomials(0, m + 1, n, cur, out);
  return out;
}

std::size_t section_dimension(std::size_t m, unsigned n) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n + m, m);
  return b.get_ui();
}

MonomialIndex::MonomialIndex(std::size_t m, unsigned n) : monomials_(monomial_basis(m, n)) {
  for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
}

std::size_t MonomialIndex::at(const Exponent& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) fail("degree_mismatch", "monomial " + to_string(e) + " not in this degree");
  return it->second;
}

Subvariety Subvariety::points(std::vector<Vector<Rational>> pts) {
  if (pts.empty()) fail("empty_subvariety", "point set is empty");
  const std::size_t n = pts.front().size();
  for (const auto& p : pts) {
    if (p.size() != n) fail("dimension_mismatch", "points with different coordinate counts");
    if (is_zero_vector<Rational>(p)) fail("invalid_point", "the zero vector is not a projective point");
  }
  return Subvariety(Points{std::move(pts)}, n);
}

Subvariety Subvariety::linear(std::vector<Vector<Rational>> forms) {
  if (forms.empty()) fail("empty_subvariety", "no linear forms given");
  const std::size_t n = forms.front().size();
  for (const auto& f : forms)
    if (f.size() != n) fail("dimension_mismatch", "linear forms with different lengths");
  Subvariety y(Linear{std::move(forms)}, n);
  if (rank(Matrix<Rational>::from_rows(y.as_linear().forms, n)) != y.as_linear().forms.size())
    fail("dependent_vectors", "linear forms are dependent");
  if (y.as_linear().forms.size() >= n) fail("empty_subvariety", "linear forms cut out the empty set");
  return y;
}

void Subvariety::validate(const ValuedField& field) const {
  if (!is_points()) return;
  std::vector<Vector<Rational>> normalized;
  for (const auto& p : as_points().points) normalized.push_back(normalize_point(field, p));
  for (std::size_t i = 0; i < normalized.size(); ++i)
    for (std::size_t j = i + 1; j < normalized.size(); ++j)
      if (normalized[i] == normalized[j]) fail("duplicate_points", "subvariety points are not distinct");
}

Matrix<Rational> Subvariety::parametrization() const {
  const auto& forms = as_linear().forms;
  auto ker = kernel_basis(Matrix<Rational>::from_rows(forms, num_vars_));
  return Matrix<Rational>::from_columns(ker, num_vars_);
}

Vector<Rational> normalize_point(const ValuedField& field, std::span<const Rational> point) {
  std::size_t best = point.size();
  Magnitude best_abs;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (is_zero(point[i])) continue;
    Magnitude a = field.abs(point[i]);
    if (best == point.size() || best_abs < a) {
      best = i;
      best_abs = a;
    }
  }
  if (best == point.size()) fail("invalid_point", "the zero vector is not a projective point");
  Vector<Rational> out(point.begin(), point.end());
  Rational inv = 1 / point[best];
  for (auto& x : out) x *= inv;
  return out;
}

Matrix<Rational> evaluation_matrix(std::span<const Vector<Rational>> points, std::size_t m, unsigned n) {
  MonomialIndex index(m, n);
  Matrix<Rational> out(points.size(), index.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != m + 1) fail("dimension_mismatch", "point lives in the wrong projective space");
    for (std::size_t j = 0; j < index.size(); ++j) {
      Rational v = 1;
      const auto& e = index.monomials()[j];
      for (std::size_t k = 0; k <= m; ++k)
        for (unsigned t = 0; t < e[k]; ++t) v *= points[i][k];
      out(i, j) = v;
    }
  }
  return out;
}

std::vector<Vector<Rational>> restriction_kernel(const ValuedField& field, const Subvariety& y, std::size_t m,
                                                 unsigned n) {
  if (y.num_vars() != m + 1) fail("dimension_mismatch", "subvariety lives in the wrong projective space");
  if (y.is_points()) {
    std::vector<Vector<Rational>> normalized;
    for (const auto& p : y.as_points().points) normalized.push_back(normalize_point(field, p));
    return kernel_basis(evaluation_matrix(normalized, m, n));
  }
  if (n == 0) return {};
  MonomialIndex index(m, n);
  std::vector<Vector<Rational>> gens;
  for (const auto& form : y.as_linear().forms) {
    Section l = Section::linear(form);
    for (const auto& e : monomial_basis(m, n - 1)) {
      Section mono(m + 1, n - 1);
      mono.set(e, Rational(1));
      gens.push_back((l * mono).to_vector(index));
    }
  }
  auto [r, pivots] = rref(Matrix<Rational>::from_rows(gens, index.size()));
  std::vector<Vector<Rational>> out;
  for (std::size_t i = 0; i < pivots.size(); ++i) out.push_back(r.row(i));
  return out;
}

Rational evaluate_normalized(const ValuedField& field, const Section& s, std::span<const Rational> pt) {
  auto x = normalize_point(field, pt);
  return s.evaluate(x);
}

std::string to_string(const Exponent& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(e[i]);
  }
  return out;
}

}  // namespace ultranorm
