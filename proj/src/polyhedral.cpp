#include "ultranorm/polyhedral.hpp"

#include "ultranorm/errors.hpp"
#include "ultranorm/lp.hpp"

namespace ultranorm {

PolyhedralNorm PolyhedralNorm::max_abs(Matrix<Rational> functionals) {
  if (rank(functionals) != functionals.cols())
    fail("degenerate_norm", "archimedean functionals do not separate points");
  return PolyhedralNorm(std::move(functionals), std::nullopt);
}

PolyhedralNorm PolyhedralNorm::scaled_sup(std::size_t dim, const Rational& c) {
  if (sgn(c) <= 0) fail("invalid_weight", "norm scale must be positive");
  Matrix<Rational> phi(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) phi(i, i) = c;
  return PolyhedralNorm(std::move(phi), std::nullopt);
}

PolyhedralNorm PolyhedralNorm::scaled_l1(std::size_t dim, const Rational& c) {
  if (sgn(c) <= 0) fail("invalid_weight", "norm scale must be positive");
  if (dim > 16) fail("too_large", "l1 norm in dimension > 16 has too many facets");
  if (dim == 0) return PolyhedralNorm(Matrix<Rational>(0, 0), std::nullopt);
  const std::size_t count = std::size_t{1} << (dim - 1);
  Matrix<Rational> phi(count, dim);
  for (std::size_t k = 0; k < count; ++k) {
    phi(k, 0) = c;
    for (std::size_t i = 1; i < dim; ++i) phi(k, i) = (k >> (i - 1)) & 1U ? Rational(-c) : c;
  }
  return PolyhedralNorm(std::move(phi), std::nullopt);
}

PolyhedralNorm PolyhedralNorm::quotient(const Matrix<Rational>& f) const {
  if (f.cols() != dim()) fail("dimension_mismatch", "quotient map does not start at the norm's space");
  if (rank(f) != f.rows()) fail("not_surjective", "quotient map is not surjective");
  return PolyhedralNorm(phi_, map_ ? f * *map_ : f);
}

Rational PolyhedralNorm::norm(std::span<const Rational> x) const {
  if (x.size() != dim()) fail("dimension_mismatch", "vector has wrong dimension");
  if (!map_) {
    Rational best = 0;
    for (std::size_t k = 0; k < phi_.rows(); ++k) {
      Rational v = 0;
      for (std::size_t j = 0; j < x.size(); ++j)
        if (!is_zero(x[j]) && !is_zero(phi_(k, j))) v += phi_(k, j) * x[j];
      if (abs(v) > best) best = abs(v);
    }
    return best;
  }
  if (is_zero_vector(x)) return 0;
  // min t over (z, t):  phi z - t <= 0,  -phi z - t <= 0,  A z = x.
  const std::size_t s = phi_.cols(), k = phi_.rows();
  Matrix<Rational> g(2 * k, s + 1), e(map_->rows(), s + 1);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      g(i, j) = phi_(i, j);
      g(k + i, j) = -phi_(i, j);
    }
    g(i, s) = -1;
    g(k + i, s) = -1;
  }
  for (std::size_t i = 0; i < map_->rows(); ++i)
    for (std::size_t j = 0; j < s; ++j) e(i, j) = (*map_)(i, j);
  Vector<Rational> d(s + 1, Rational(0));
  d[s] = 1;
  auto r = minimize(d, g, Vector<Rational>(2 * k, Rational(0)), e, Vector<Rational>(x.begin(), x.end()));
  if (r.status != LpStatus::optimal) fail("internal", "quotient norm program failed");
  return r.value;
}

Rational PolyhedralNorm::support(std::span<const Rational> g) const {
  if (g.size() != dim()) fail("dimension_mismatch", "functional has wrong dimension");
  const std::size_t s = phi_.cols(), k = phi_.rows();
  // max (g A) z subject to |phi z| <= 1.
  Vector<Rational> d(s, Rational(0));
  for (std::size_t j = 0; j < s; ++j) {
    if (map_) {
      for (std::size_t i = 0; i < g.size(); ++i) d[j] -= g[i] * (*map_)(i, j);
    } else {
      d[j] = -g[j];
    }
  }
  Matrix<Rational> box(2 * k, s);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      box(i, j) = phi_(i, j);
      box(k + i, j) = -phi_(i, j);
    }
  auto r = minimize(d, box, Vector<Rational>(2 * k, Rational(1)), Matrix<Rational>(0, s), {});
  if (r.status != LpStatus::optimal) fail("internal", "support function program failed");
  return -r.value;
}

}  // namespace ultranorm
