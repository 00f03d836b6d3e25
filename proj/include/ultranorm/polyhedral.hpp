#pragma once

#include <optional>
#include <span>

#include "ultranorm/matrix.hpp"

namespace ultranorm {

/// Archimedean norm with a rational polytope as unit ball.
///
/// On the source space R^s it is ||z|| = max_k |phi_k . z| (the phi_k span the
/// dual). An optional surjection A : R^s -> R^r turns it into the quotient norm
/// ||y|| = min { ||z|| : A z = y }, evaluated by linear programming.
class PolyhedralNorm {
 public:
  /// Rows of `functionals` are the phi_k; they must have full column rank.
  static PolyhedralNorm max_abs(Matrix<Rational> functionals);
  /// c * max_i |x_i|.
  static PolyhedralNorm scaled_sup(std::size_t dim, const Rational& c);
  /// c * sum_i |x_i| (2^(dim-1) functionals).
  static PolyhedralNorm scaled_l1(std::size_t dim, const Rational& c);

  /// Quotient along a surjection f (rows = target dimension).
  PolyhedralNorm quotient(const Matrix<Rational>& f) const;

  std::size_t dim() const { return map_ ? map_->rows() : phi_.cols(); }
  const Matrix<Rational>& functionals() const { return phi_; }
  const std::optional<Matrix<Rational>>& map() const { return map_; }

  Rational norm(std::span<const Rational> x) const;
  /// max g.y over the unit ball.
  Rational support(std::span<const Rational> g) const;

 private:
  PolyhedralNorm(Matrix<Rational> phi, std::optional<Matrix<Rational>> map)
      : phi_(std::move(phi)), map_(std::move(map)) {}
  Matrix<Rational> phi_;
  std::optional<Matrix<Rational>> map_;
};

}  // namespace ultranorm
