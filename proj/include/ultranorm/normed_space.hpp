#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ultranorm/errors.hpp"
#include "ultranorm/magnitude.hpp"
#include "ultranorm/matrix.hpp"
#include "ultranorm/valued_field.hpp"

namespace ultranorm {

/// Finite-dimensional ultrametric normed space, stored through an orthogonal
/// basis: ||sum a_i e_i|| = max |a_i| * weights[i].
///
/// `basis` holds the e_i as columns in ambient coordinates. The inverse is kept
/// alongside so that coordinates are a single matrix-vector product.
template <class K>
class BasicNormedSpace {
 public:
  BasicNormedSpace(ValuedField field, Matrix<K> basis, std::vector<Magnitude> weights)
      : field_(field), basis_(std::move(basis)), weights_(std::move(weights)) {
    if (basis_.rows() != basis_.cols()) fail("dimension_mismatch", "basis matrix must be square");
    auto inv = inverse(basis_);
    if (!inv) fail("singular_basis", "basis matrix is not invertible");
    inverse_ = std::move(*inv);
    finish();
  }

  /// Caller guarantees basis * inverse = 1.
  static BasicNormedSpace with_inverse(ValuedField field, Matrix<K> basis, Matrix<K> inverse,
                                       std::vector<Magnitude> weights) {
    return BasicNormedSpace(field, std::move(basis), std::move(inverse), std::move(weights));
  }

  /// Standard basis with the given weights.
  static BasicNormedSpace standard(ValuedField field, std::vector<Magnitude> weights) {
    auto id = Matrix<K>::identity(weights.size());
    return BasicNormedSpace(field, id, id, std::move(weights));
  }

  std::size_t dim() const { return weights_.size(); }
  const ValuedField& field() const { return field_; }
  const Matrix<K>& basis() const { return basis_; }
  const Matrix<K>& inverse_basis() const { return inverse_; }
  const std::vector<Magnitude>& weights() const { return weights_; }
  bool is_diagonal() const { return diagonal_; }
  Vector<K> basis_vector(std::size_t i) const { return basis_.column(i); }

  /// Coefficients of v in the orthogonal basis.
  Vector<K> coordinates(std::span<const K> v) const {
    if (v.size() != dim()) fail("dimension_mismatch", "vector has wrong dimension");
    if (diagonal_) {
      Vector<K> out(v.begin(), v.end());
      for (std::size_t i = 0; i < out.size(); ++i)
        if (!is_zero(out[i])) out[i] *= inverse_(i, i);
      return out;
    }
    return inverse_ * v;
  }

  /// Ambient vector with the given orthogonal coordinates.
  Vector<K> from_coordinates(std::span<const K> c) const {
    if (c.size() != dim()) fail("dimension_mismatch", "coordinate vector has wrong dimension");
    if (diagonal_) {
      Vector<K> out(c.begin(), c.end());
      for (std::size_t i = 0; i < out.size(); ++i)
        if (!is_zero(out[i])) out[i] *= basis_(i, i);
      return out;
    }
    return basis_ * c;
  }

  /// Weighted magnitude |c| * weights[i] of one coordinate.
  Magnitude weighted(std::size_t i, const K& c) const { return field_.abs(c) * weights_[i]; }

  Magnitude coordinate_norm(std::span<const K> c) const {
    Magnitude best = Magnitude::zero(field_.prime());
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (is_zero(c[i])) continue;
      Magnitude m = weighted(i, c[i]);
      if (best < m) best = m;
    }
    return best;
  }

  Magnitude norm(std::span<const K> v) const { return coordinate_norm(coordinates(v)); }
  Magnitude norm(const Vector<K>& v) const { return norm(std::span<const K>(v)); }

 private:
  BasicNormedSpace(ValuedField field, Matrix<K> basis, Matrix<K> inv, std::vector<Magnitude> weights)
      : field_(field), basis_(std::move(basis)), inverse_(std::move(inv)), weights_(std::move(weights)) {
    finish();
  }

  void finish() {
    if (weights_.size() != basis_.cols())
      fail("dimension_mismatch", "number of weights differs from the dimension");
    for (auto& w : weights_) {
      if (w.is_zero()) fail("invalid_weight", "norm weights must be positive");
      w = w.with_base(field_.prime());
    }
    diagonal_ = basis_.is_diagonal();
  }

  ValuedField field_;
  Matrix<K> basis_;
  Matrix<K> inverse_;
  std::vector<Magnitude> weights_;
  bool diagonal_ = false;
};

using NormedSpace = BasicNormedSpace<Rational>;
using LaurentNormedSpace = BasicNormedSpace<RatFunc>;

/// Vectors (ambient coordinates) with their norms, orthogonal as a family.
template <class K>
struct OrthogonalFamily {
  std::vector<Vector<K>> vectors;
  std::vector<Magnitude> weights;
};

/// Valuated Gaussian elimination state over an orthogonal coordinate system.
///
/// Rows are kept in orthogonal coordinates. Row k vanishes at the pivot columns
/// of rows 0..k-1 and attains its norm at its own pivot column; such a family is
/// orthogonal, and reducing a vector against it (zeroing every pivot column in
/// row order) leaves a residual whose norm is the distance to the span.
template <class K>
class Orthogonalizer {
 public:
  explicit Orthogonalizer(const BasicNormedSpace<K>& space) : space_(&space) {}

  struct Reduced {
    Vector<K> residual;  // orthogonal coordinates, zero at all pivots
    Magnitude norm;      // = distance to the current span
  };

  Reduced reduce_coordinates(Vector<K> c) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t p = pivots_[k];
      if (is_zero(c[p])) continue;
      K f = c[p] / rows_[k][p];
      const auto& row = rows_[k];
      for (std::size_t j = 0; j < c.size(); ++j)
        if (!is_zero(row[j])) c[j] -= f * row[j];
    }
    Magnitude n = space_->coordinate_norm(c);
    return {std::move(c), std::move(n)};
  }

  /// Adds v to the flag. Returns the orthogonal representative (v itself when v
  /// already realizes its distance to the span) and its norm; nullopt when v is
  /// in the current span.
  std::optional<std::pair<Vector<K>, Magnitude>> push(std::span<const K> v) {
    Vector<K> c = space_->coordinates(v);
    Magnitude original = space_->coordinate_norm(c);
    Reduced r = reduce_coordinates(std::move(c));
    if (r.norm.is_zero()) return std::nullopt;
    // Pivot: maximal weighted entry, lowest column on ties.
    std::size_t pivot = 0;
    Magnitude best = Magnitude::zero();
    for (std::size_t j = 0; j < r.residual.size(); ++j) {
      if (is_zero(r.residual[j])) continue;
      Magnitude m = space_->weighted(j, r.residual[j]);
      if (best < m) {
        best = m;
        pivot = j;
      }
    }
    Vector<K> g = original == r.norm ? Vector<K>(v.begin(), v.end()) : space_->from_coordinates(r.residual);
    rows_.push_back(std::move(r.residual));
    pivots_.push_back(pivot);
    return std::make_pair(std::move(g), std::move(r.norm));
  }

  std::size_t size() const { return rows_.size(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  const BasicNormedSpace<K>* space_;
  std::vector<Vector<K>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Orthogonal basis (g_1..g_s) of span(flag) with span(g_1..g_i) = span(f_1..f_i).
template <class K>
OrthogonalFamily<K> orthogonalize_flag(const BasicNormedSpace<K>& space,
                                       std::span<const Vector<K>> flag) {
  Orthogonalizer<K> orth(space);
  OrthogonalFamily<K> out;
  for (const auto& f : flag) {
    auto g = orth.push(f);
    if (!g) fail("dependent_vectors", "flag vectors are linearly dependent");
    out.vectors.push_back(std::move(g->first));
    out.weights.push_back(std::move(g->second));
  }
  return out;
}

template <class K>
struct Distance {
  Magnitude distance;
  Vector<K> minimizer;  // w in W with ||x - w|| = distance
};

/// min_{w in W} ||x - w||, attained. W is given by spanning vectors.
template <class K>
Distance<K> distance_to_subspace(const BasicNormedSpace<K>& space, std::span<const K> x,
                                 std::span<const Vector<K>> subspace) {
  if (x.size() != space.dim()) fail("dimension_mismatch", "vector has wrong dimension");
  Orthogonalizer<K> orth(space);
  for (const auto& w : subspace) {
    if (w.size() != space.dim()) fail("dimension_mismatch", "subspace vector has wrong dimension");
    orth.push(w);
  }
  Vector<K> c = space.coordinates(x);
  Magnitude full = space.coordinate_norm(c);
  auto r = orth.reduce_coordinates(std::move(c));
  if (r.norm.is_zero()) return {r.norm, Vector<K>(x.begin(), x.end())};
  if (full == r.norm) return {r.norm, Vector<K>(x.size(), K(0))};
  Vector<K> residual = space.from_coordinates(r.residual);
  Vector<K> w(x.begin(), x.end());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] -= residual[i];
  return {r.norm, std::move(w)};
}

/// Quotient norm on the target of a surjection, with norm-attaining lifts.
template <class K>
struct QuotientNorm {
  BasicNormedSpace<K> target;
  /// Columns are the lifts of the target's orthogonal basis vectors.
  Matrix<K> lifts;

  /// x with map(x) = y and ||x|| = ||y||_quot.
  Vector<K> lift(std::span<const K> y) const { return lifts * std::span<const K>(target.coordinates(y)); }
};

/// `map` is a (t x r) matrix sending the r-dimensional space onto K^t.
template <class K>
QuotientNorm<K> quotient_norm(const BasicNormedSpace<K>& space, const Matrix<K>& map) {
  if (map.cols() != space.dim()) fail("dimension_mismatch", "map does not start at the space");
  const std::size_t t = map.rows();
  if (rank(map) != t) fail("not_surjective", "quotient map is not surjective");
  Orthogonalizer<K> orth(space);
  for (const auto& k : kernel_basis(map))
    if (!orth.push(k)) fail("internal", "kernel basis is dependent");
  std::vector<Vector<K>> complement;
  std::vector<Magnitude> weights;
  for (std::size_t i = 0; i < space.dim() && complement.size() < t; ++i) {
    Vector<K> e(space.dim(), K(0));
    e[i] = K(1);
    if (auto g = orth.push(e)) {
      complement.push_back(std::move(g->first));
      weights.push_back(std::move(g->second));
    }
  }
  Matrix<K> lifts = Matrix<K>::from_columns(complement, space.dim());
  Matrix<K> images = map * lifts;
  return {BasicNormedSpace<K>(space.field(), std::move(images), std::move(weights)), std::move(lifts)};
}

/// Dual norm: the dual basis e_i^v with weights 1 / weights[i].
/// Ambient coordinates of the dual are those of the dual standard basis.
template <class K>
BasicNormedSpace<K> dual_norm(const BasicNormedSpace<K>& space) {
  std::vector<Magnitude> w;
  w.reserve(space.dim());
  for (const auto& x : space.weights()) w.push_back(Magnitude::one(x.base()) / x);
  return BasicNormedSpace<K>::with_inverse(space.field(), space.inverse_basis().transpose(),
                                           space.basis().transpose(), std::move(w));
}

/// Finite set of norm values, ascending. Discrete valuations: 0 and one
/// representative per coset weights[i] * rho^Z (the rho-free coefficient).
/// Trivial valuation: {0, w_1, ..., w_r}.
template <class K>
std::vector<Magnitude> norm_value_set(const BasicNormedSpace<K>& space) {
  const auto base = space.field().prime();
  std::vector<Magnitude> out{Magnitude::zero(base)};
  for (const auto& w : space.weights()) {
    if (space.field().is_discrete())
      out.push_back(Magnitude::from_value(w.coefficient(), base));
    else
      out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Reinterprets a trivially valued space over Q((T)) with |T| = 1/P.
LaurentNormedSpace scalar_extension(const NormedSpace& space, unsigned long base_prime);

}  // namespace ultranorm
