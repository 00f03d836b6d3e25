#include "ultranorm/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace ultranorm {

namespace {

Integer ipow(unsigned long p, unsigned long e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), p, e);
  return out;
}

Rational prime_power(unsigned long p, long e) { return ultranorm::pow(Rational(p), e); }

Integer common_denominator(const Matrix<Rational>& m) {
  Integer d = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), m(i, j).get_den_mpz_t());
  return d;
}

void swap_columns(Matrix<Rational>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

void swap_columns(Matrix<Integer>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

Integer bareiss_determinant(Matrix<Integer> a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && sgn(a(piv, k)) == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace

Rational reduce_mod_prime_power(const Rational& x, unsigned long p, long e) {
  if (is_zero(x)) return Rational(0);
  long k = std::max<long>(0, -valuation(x, p));
  k = std::max(k, -e);
  // x * p^k = a / b with p not dividing b; reduce modulo p^(e+k).
  Rational scaled = x * prime_power(p, k);
  Integer modulus = ipow(p, static_cast<unsigned long>(e + k));
  Integer a = scaled.get_num(), b = scaled.get_den(), binv;
  if (modulus == 1) return Rational(0);
  if (mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), modulus.get_mpz_t()) == 0)
    fail("internal", "denominator not invertible modulo a prime power");
  Integer z = a * binv;
  mpz_mod(z.get_mpz_t(), z.get_mpz_t(), modulus.get_mpz_t());
  Rational out(z, ipow(p, static_cast<unsigned long>(k)));
  out.canonicalize();
  return out;
}

Lattice Lattice::from_generators(const ValuedField& field, std::span<const Vector<Rational>> generators,
                                 std::size_t dim) {
  if (field.kind() != FieldKind::padic)
    fail("unsupported_field", "lattices are supported over p-adic fields only, got " + field.describe());
  const unsigned long p = field.prime();
  Matrix<Rational> m = Matrix<Rational>::from_columns(generators, dim);
  std::size_t c = 0;
  for (std::size_t i = 0; i < dim && c < m.cols(); ++i) {
    std::size_t best = m.cols();
    long best_v = 0;
    for (std::size_t j = c; j < m.cols(); ++j) {
      if (is_zero(m(i, j))) continue;
      long v = valuation(m(i, j), p);
      if (best == m.cols() || v < best_v) {
        best = j;
        best_v = v;
      }
    }
    if (best == m.cols()) continue;
    swap_columns(m, c, best);
    // Normalize the pivot to p^v by a unit.
    Rational unit_inv = prime_power(p, best_v) / m(i, c);
    for (std::size_t r = 0; r < dim; ++r)
      if (!is_zero(m(r, c))) m(r, c) *= unit_inv;
    const Rational pivot = m(i, c);
    for (std::size_t j = c + 1; j < m.cols(); ++j) {
      if (is_zero(m(i, j))) continue;
      Rational f = m(i, j) / pivot;
      for (std::size_t r = i; r < dim; ++r)
        if (!is_zero(m(r, c))) m(r, j) -= f * m(r, c);
    }
    for (std::size_t k = 0; k < c; ++k) {
      Rational rep = reduce_mod_prime_power(m(i, k), p, best_v);
      if (rep == m(i, k)) continue;
      Rational f = (m(i, k) - rep) / pivot;
      for (std::size_t r = i; r < dim; ++r)
        if (!is_zero(m(r, c))) m(r, k) -= f * m(r, c);
    }
    ++c;
  }
  Matrix<Rational> basis(dim, c);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t j = 0; j < c; ++j) basis(r, j) = m(r, j);
  return Lattice(field, std::move(basis));
}

bool Lattice::contains(std::span<const Rational> v) const {
  if (v.size() != dim()) fail("dimension_mismatch", "vector has wrong dimension");
  auto c = solve(basis_, v);
  if (!c) return false;
  for (const auto& x : *c)
    if (!is_zero(x) && valuation(x, field_.prime()) < 0) return false;
  return true;
}

NormedSpace norm_from_lattice(const Lattice& lattice) {
  if (!lattice.is_full()) fail("not_full_rank", "lattice does not span the ambient space");
  std::vector<Magnitude> w(lattice.dim(), Magnitude::one(lattice.field().prime()));
  return NormedSpace(lattice.field(), lattice.basis(), std::move(w));
}

Lattice lattice_from_norm(const NormedSpace& space) {
  if (space.field().kind() != FieldKind::padic)
    fail("unsupported_field", "unit-ball lattices need a p-adic field, got " + space.field().describe());
  const unsigned long p = space.field().prime();
  std::vector<Vector<Rational>> gens;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const Rational& w = space.weights()[i].value();
    long k = 0;
    while (prime_power(p, k) < w) ++k;
    while (prime_power(p, k - 1) >= w) --k;
    Vector<Rational> g = space.basis_vector(i);
    Rational s = prime_power(p, k);
    for (auto& x : g) x *= s;
    gens.push_back(std::move(g));
  }
  return Lattice::from_generators(space.field(), gens, space.dim());
}

Matrix<Integer> hermite_normal_form(Matrix<Integer> m) {
  const std::size_t rows = m.rows();
  std::size_t c = 0;
  for (std::size_t i = 0; i < rows && c < m.cols(); ++i) {
    // Euclid across columns c.. until a single nonzero remains in row i.
    while (true) {
      std::size_t best = m.cols();
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (sgn(m(i, j)) == 0) continue;
        if (best == m.cols() || abs(m(i, j)) < abs(m(i, best))) best = j;
      }
      if (best == m.cols()) break;
      swap_columns(m, c, best);
      bool done = true;
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        if (sgn(m(i, j)) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, j).get_mpz_t(), m(i, c).get_mpz_t());
        for (std::size_t r = i; r < rows; ++r)
          if (sgn(m(r, c)) != 0) m(r, j) -= q * m(r, c);
        if (sgn(m(i, j)) != 0) done = false;
      }
      if (done) break;
    }
    if (sgn(m(i, c)) == 0) continue;
    if (sgn(m(i, c)) < 0)
      for (std::size_t r = i; r < rows; ++r) m(r, c) = -m(r, c);
    for (std::size_t k = 0; k < c; ++k) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m(i, k).get_mpz_t(), m(i, c).get_mpz_t());
      if (sgn(q) == 0) continue;
      for (std::size_t r = i; r < rows; ++r)
        if (sgn(m(r, c)) != 0) m(r, k) -= q * m(r, c);
    }
    ++c;
  }
  Matrix<Integer> out(rows, c);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t j = 0; j < c; ++j) out(r, j) = m(r, j);
  return out;
}

Integer maximal_minor_gcd(const Matrix<Integer>& m) {
  const std::size_t r = m.rows(), k = m.cols();
  if (k > r) return 0;
  if (k == 0) return 1;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  Integer g = 0;
  while (true) {
    Matrix<Integer> sub(k, k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) sub(a, b) = m(idx[a], b);
    Integer d = bareiss_determinant(std::move(sub));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    if (g == 1) return g;
    // next combination
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == r - k + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t t = pos; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
  return g;
}

ZLattice ZLattice::from_generators(std::span<const Vector<Rational>> generators, std::size_t dim) {
  Matrix<Rational> m = Matrix<Rational>::from_columns(generators, dim);
  Integer d = common_denominator(m);
  Matrix<Integer> im(dim, m.cols());
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational s = m(i, j) * d;
      im(i, j) = s.get_num();
    }
  Matrix<Integer> h = hermite_normal_form(std::move(im));
  Matrix<Rational> basis(dim, h.cols());
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) {
      basis(i, j) = Rational(h(i, j), d);
      basis(i, j).canonicalize();
    }
  return ZLattice(std::move(basis));
}

ZLattice ZLattice::standard(std::size_t dim) {
  return ZLattice(Matrix<Rational>::identity(dim));
}

bool ZLattice::contains(std::span<const Rational> v) const {
  auto c = solve(basis_, v);
  if (!c) return false;
  return std::all_of(c->begin(), c->end(), [](const Rational& x) { return x.get_den() == 1; });
}

std::vector<Integer> ZLattice::coordinates(std::span<const Rational> v) const {
  auto c = solve(basis_, v);
  if (!c) fail("not_in_lattice", "vector is outside the lattice span");
  std::vector<Integer> out;
  for (const auto& x : *c) {
    if (x.get_den() != 1) fail("not_in_lattice", "vector is not a lattice vector");
    out.push_back(x.get_num());
  }
  return out;
}

Rational ZLattice::covolume() const {
  if (rank() != dim()) fail("not_full_rank", "covolume of a lattice that is not of full rank");
  return abs(determinant(basis_));
}

ZLattice dual(const ZLattice& lattice) {
  if (lattice.rank() != lattice.dim()) fail("not_full_rank", "dual of a lattice that is not of full rank");
  auto inv = inverse(lattice.basis());
  return ZLattice::from_generators(inv->transpose().columns(), lattice.dim());
}

ZLattice intersect(const ZLattice& a, const ZLattice& b) {
  if (a.dim() != b.dim()) fail("dimension_mismatch", "lattices in different ambient spaces");
  auto gens = dual(a).basis().columns();
  auto more = dual(b).basis().columns();
  gens.insert(gens.end(), more.begin(), more.end());
  return dual(ZLattice::from_generators(gens, a.dim()));
}

Lattice localize(const ZLattice& lattice, unsigned long p) {
  return Lattice::from_generators(ValuedField::padic(p), lattice.basis().columns(), lattice.dim());
}

ZLattice image(const Matrix<Rational>& map, const ZLattice& lattice) {
  Matrix<Rational> img = map * lattice.basis();
  return ZLattice::from_generators(img.columns(), map.rows());
}

}  // namespace ultranorm
