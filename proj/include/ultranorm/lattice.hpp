#pragma once

#include <span>
#include <vector>

#include "ultranorm/matrix.hpp"
#include "ultranorm/normed_space.hpp"
#include "ultranorm/valued_field.hpp"

namespace ultranorm {

/// Finitely generated Z_(p)-submodule of Q^d (p = the field's prime).
///
/// The canonical basis is a column echelon form: each basis column has a pivot
/// row where it equals p^e, it vanishes above that row, and the entries of
/// earlier columns in that row lie in Z[1/p] ∩ [0, p^e).
class Lattice {
 public:
  static Lattice from_generators(const ValuedField& field, std::span<const Vector<Rational>> generators,
                                 std::size_t dim);

  const ValuedField& field() const { return field_; }
  std::size_t dim() const { return basis_.rows(); }
  std::size_t rank() const { return basis_.cols(); }
  bool is_full() const { return rank() == dim(); }
  const Matrix<Rational>& basis() const { return basis_; }
  bool contains(std::span<const Rational> v) const;

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.field_ == b.field_ && a.basis_ == b.basis_;
  }

 private:
  Lattice(ValuedField field, Matrix<Rational> basis) : field_(field), basis_(std::move(basis)) {}
  ValuedField field_;
  Matrix<Rational> basis_;
};

/// Representative of x modulo p^e Z_(p), taken in Z[1/p] ∩ [0, p^e).
Rational reduce_mod_prime_power(const Rational& x, unsigned long p, long e);

/// The norm for which the lattice's canonical basis is orthonormal.
NormedSpace norm_from_lattice(const Lattice& lattice);
/// Unit ball {v : ||v|| <= 1}: each orthogonal basis vector scaled by the
/// smallest power p^k with weight <= p^k.
Lattice lattice_from_norm(const NormedSpace& space);

/// Finitely generated Z-submodule of Q^d, canonical Hermite normal form
/// (columns, lower echelon, positive pivots, reduced entries left of pivots).
class ZLattice {
 public:
  static ZLattice from_generators(std::span<const Vector<Rational>> generators, std::size_t dim);
  static ZLattice standard(std::size_t dim);

  std::size_t dim() const { return basis_.rows(); }
  std::size_t rank() const { return basis_.cols(); }
  const Matrix<Rational>& basis() const { return basis_; }
  bool contains(std::span<const Rational> v) const;
  /// Integer coordinates of v in the canonical basis; v must lie in the lattice.
  std::vector<Integer> coordinates(std::span<const Rational> v) const;
  /// |det| of the basis (full rank only): the covolume relative to Z^d.
  Rational covolume() const;

  friend bool operator==(const ZLattice& a, const ZLattice& b) { return a.basis_ == b.basis_; }

 private:
  explicit ZLattice(Matrix<Rational> basis) : basis_(std::move(basis)) {}
  Matrix<Rational> basis_;
};

/// Dual lattice {y : y.x in Z for all x in L}; full rank only.
ZLattice dual(const ZLattice& lattice);
/// Intersection of full-rank lattices.
ZLattice intersect(const ZLattice& a, const ZLattice& b);
/// L ⊗ Z_(p).
Lattice localize(const ZLattice& lattice, unsigned long p);
/// Image f(L) for a rational matrix f.
ZLattice image(const Matrix<Rational>& map, const ZLattice& lattice);

/// Column Hermite normal form of an integer matrix; returns only the nonzero columns.
Matrix<Integer> hermite_normal_form(Matrix<Integer> m);

/// gcd of all k x k minors of the (r x k) integer matrix; 1 iff the columns
/// extend to a Z-basis of Z^r.
Integer maximal_minor_gcd(const Matrix<Integer>& m);

}  // namespace ultranorm
