#include "ultranorm/adelic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>

#include "ultranorm/lp.hpp"
#include "ultranorm/parallel.hpp"
#include "ultranorm/sections.hpp"

namespace ultranorm {

AdelicSpace::AdelicSpace(std::size_t dim, std::map<unsigned long, NormedSpace> finite, PolyhedralNorm archimedean)
    : dim_(dim), finite_(std::move(finite)), arch_(std::move(archimedean)) {
  for (const auto& [p, space] : finite_) {
    if (space.field() != ValuedField::padic(p))
      fail("invalid_field", "norm at p = " + std::to_string(p) + " is not " + ValuedField::padic(p).describe());
    if (space.dim() != dim_) fail("dimension_mismatch", "finite norm at p = " + std::to_string(p) + " has wrong dimension");
  }
  if (arch_.dim() != dim_) fail("dimension_mismatch", "archimedean norm has wrong dimension");
}

AdelicSpace AdelicSpace::standard(std::size_t dim) {
  return AdelicSpace(dim, {}, PolyhedralNorm::scaled_sup(dim, 1));
}

NormedSpace AdelicSpace::finite_norm(unsigned long p) const {
  auto it = finite_.find(p);
  if (it != finite_.end()) return it->second;
  auto f = ValuedField::padic(p);
  return NormedSpace::standard(f, std::vector<Magnitude>(dim_, Magnitude::one(p)));
}

NormedLattice finite_unit_lattice(const AdelicSpace& space) {
  // The Z-span of the canonical Z_(p)-basis of the unit ball at p is that ball
  // at p and standard elsewhere (entries in Z[1/p], determinant a power of p).
  // Intersecting those directly would also impose Z_(p)^d at p, so each one is
  // first scaled by prod q^(-b_q) over the other listed q, where the ball at q
  // sits inside q^(-b_q) Z_(q)^d: a unit at p, and large enough at q.
  std::map<unsigned long, ZLattice> local;
  std::map<unsigned long, long> slack;
  for (const auto& [p, norm] : space.finite()) {
    Lattice ball = lattice_from_norm(norm);
    long b = 0;
    for (const auto& col : ball.basis().columns())
      for (const auto& x : col)
        if (!is_zero(x)) b = std::max(b, -valuation(x, p));
    slack[p] = b;
    local.emplace(p, ZLattice::from_generators(ball.basis().columns(), space.dim()));
  }
  std::optional<ZLattice> out;
  for (const auto& [p, lat] : local) {
    Rational c = 1;
    for (const auto& [q, b] : slack)
      if (q != p) c *= pow(Rational(static_cast<long>(q)), -b);
    auto gens = lat.basis().columns();
    for (auto& g : gens)
      for (auto& x : g) x *= c;
    auto scaled = ZLattice::from_generators(gens, space.dim());
    out = out ? intersect(*out, scaled) : scaled;
  }
  return {out ? std::move(*out) : ZLattice::standard(space.dim()), space.archimedean()};
}

bool check_localization(const AdelicSpace& space, const NormedLattice& lattice, std::span<const unsigned long> extra) {
  std::set<unsigned long> primes(extra.begin(), extra.end());
  for (const auto& [p, norm] : space.finite()) primes.insert(p);
  for (unsigned long p : primes)
    if (!(localize(lattice.lattice, p) == lattice_from_norm(space.finite_norm(p)))) return false;
  return true;
}

AdelicSpace quotient_adelic(const AdelicSpace& space, const Matrix<Rational>& f) {
  if (f.cols() != space.dim()) fail("dimension_mismatch", "quotient map does not start at the space");
  if (rank(f) != f.rows()) fail("not_surjective", "quotient map is not surjective");
  const std::size_t r = f.rows();
  // Primes where f(Z_(q)^d) may differ from Z_(q)^r even though the source is standard.
  ZLattice standard_image = image(f, ZLattice::standard(space.dim()));
  std::set<unsigned long> primes;
  for (const auto& [p, norm] : space.finite()) primes.insert(p);
  auto add_support = [&](const Integer& x) {
    if (sgn(x) == 0) return;
    for (auto p : prime_support(x)) primes.insert(p);
  };
  Rational cov = standard_image.covolume();
  add_support(cov.get_num());
  add_support(cov.get_den());
  for (std::size_t i = 0; i < standard_image.basis().rows(); ++i)
    for (std::size_t j = 0; j < standard_image.basis().cols(); ++j)
      add_support(standard_image.basis()(i, j).get_den());
  std::map<unsigned long, NormedSpace> finite;
  for (unsigned long p : primes) finite.emplace(p, quotient_norm(space.finite_norm(p), f).target);
  AdelicSpace out(r, std::move(finite), space.archimedean().quotient(f));
  if (!(finite_unit_lattice(out).lattice == image(f, finite_unit_lattice(space).lattice)))
    fail("internal", "quotient unit lattice differs from the image of the unit lattice");
  return out;
}

Rational support_unit(std::span<const unsigned long> primes) {
  Rational out = 1;
  for (auto p : std::set<unsigned long>(primes.begin(), primes.end())) {
    if (!is_prime(p)) fail("invalid_argument", std::to_string(p) + " is not prime");
    out *= p;
  }
  return out;
}

namespace {

struct Candidate {
  Rational norm;
  std::vector<long> coords;
};

Vector<Rational> combine(const Matrix<Rational>& b, const std::vector<long>& c) {
  Vector<Rational> v(b.rows(), Rational(0));
  for (std::size_t j = 0; j < c.size(); ++j)
    if (c[j] != 0)
      for (std::size_t i = 0; i < b.rows(); ++i) v[i] += b(i, j) * c[j];
  return v;
}

/// Lattice points B c with ||B c|| <= lambda, c integral. Depth first from the
/// last coordinate; each coordinate's range given the fixed ones is the exact
/// interval from two linear programs (the ball is a polytope).
class BallEnumerator {
 public:
  BallEnumerator(const PolyhedralNorm& norm, const Matrix<Rational>& b, Rational lambda, std::size_t budget)
      : norm_(norm), b_(b), lambda_(std::move(lambda)), budget_(budget), r_(b.cols()) {
    const auto& phi = norm.functionals();
    const std::size_t k = phi.rows();
    if (norm.map()) {
      const auto& a = *norm.map();
      z_ = phi.cols();
      g_ = Matrix<Rational>(2 * k, r_ + z_);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < z_; ++j) {
          g_(i, r_ + j) = phi(i, j);
          g_(k + i, r_ + j) = -phi(i, j);
        }
      // A z - B c = 0
      e_ = Matrix<Rational>(a.rows(), r_ + z_);
      for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < r_; ++j) e_(i, j) = -b(i, j);
        for (std::size_t j = 0; j < z_; ++j) e_(i, r_ + j) = a(i, j);
      }
    } else {
      Matrix<Rational> pb = phi * b;
      g_ = Matrix<Rational>(2 * k, r_);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < r_; ++j) {
          g_(i, j) = pb(i, j);
          g_(k + i, j) = -pb(i, j);
        }
      e_ = Matrix<Rational>(0, r_);
    }
    h_ = Vector<Rational>(2 * k, lambda_);
  }

  /// Integer range of coordinate `level` with c[level+1..] fixed; nullopt if empty.
  std::optional<std::pair<long, long>> range(std::size_t level, const std::vector<long>& c) const {
    const std::size_t n = r_ + z_, fixed = r_ - 1 - level;
    Matrix<Rational> e(e_.rows() + fixed, n);
    Vector<Rational> f(e_.rows() + fixed, Rational(0));
    for (std::size_t i = 0; i < e_.rows(); ++i)
      for (std::size_t j = 0; j < n; ++j) e(i, j) = e_(i, j);
    for (std::size_t t = 0; t < fixed; ++t) {
      e(e_.rows() + t, level + 1 + t) = 1;
      f[e_.rows() + t] = c[level + 1 + t];
    }
    Vector<Rational> d(n, Rational(0));
    d[level] = 1;
    auto lo = minimize(d, g_, h_, e, f);
    if (lo.status == LpStatus::infeasible) return std::nullopt;
    d[level] = -1;
    auto hi = minimize(d, g_, h_, e, f);
    if (lo.status != LpStatus::optimal || hi.status != LpStatus::optimal) fail("internal", "unbounded lattice ball");
    Integer a, z;
    mpz_cdiv_q(a.get_mpz_t(), lo.value.get_num_mpz_t(), lo.value.get_den_mpz_t());
    Rational top = -hi.value;
    mpz_fdiv_q(z.get_mpz_t(), top.get_num_mpz_t(), top.get_den_mpz_t());
    if (a > z) return std::nullopt;
    if (!a.fits_slong_p() || !z.fits_slong_p()) fail("enumeration_too_large", "coordinate range is too large");
    return std::make_pair(a.get_si(), z.get_si());
  }

  /// Points with the top coordinate fixed to `top`; nonzero, first nonzero coordinate positive.
  std::vector<Candidate> subtree(long top) {
    std::vector<long> c(r_, 0);
    c[r_ - 1] = top;
    std::vector<Candidate> out;
    if (r_ == 1) {
      visit(c, out);
      return out;
    }
    walk(r_ - 2, c, out);
    return out;
  }

  std::size_t rank() const { return r_; }

 private:
  void walk(std::size_t level, std::vector<long>& c, std::vector<Candidate>& out) {
    if (++nodes_ > budget_) fail("enumeration_too_large", "lattice point enumeration exceeds its budget");
    auto rg = range(level, c);
    if (!rg) return;
    for (long v = rg->first; v <= rg->second; ++v) {
      c[level] = v;
      if (level == 0)
        visit(c, out);
      else
        walk(level - 1, c, out);
    }
    c[level] = 0;
  }

  void visit(const std::vector<long>& c, std::vector<Candidate>& out) {
    auto first = std::find_if(c.begin(), c.end(), [](long x) { return x != 0; });
    if (first == c.end() || *first < 0) return;
    if (++nodes_ > budget_) fail("enumeration_too_large", "lattice point enumeration exceeds its budget");
    Rational n = norm_.norm(combine(b_, c));
    if (n <= lambda_) out.push_back({std::move(n), c});
  }

  const PolyhedralNorm& norm_;
  const Matrix<Rational>& b_;
  Rational lambda_;
  std::size_t budget_;
  std::size_t r_, z_ = 0;
  Matrix<Rational> g_{0, 0}, e_{0, 0};
  Vector<Rational> h_;
  inline static thread_local std::size_t nodes_ = 0;

 public:
  static void reset_nodes() { nodes_ = 0; }
};

Matrix<Integer> integer_columns(const std::vector<const Candidate*>& cs, std::size_t r) {
  Matrix<Integer> m(r, cs.size());
  for (std::size_t j = 0; j < cs.size(); ++j)
    for (std::size_t i = 0; i < r; ++i) m(i, j) = cs[j]->coords[i];
  return m;
}

class BasisSearch {
 public:
  BasisSearch(const std::vector<Candidate>& cands, std::size_t r, std::size_t budget)
      : cands_(cands), r_(r), budget_(budget) {}

  /// A Z-basis among the first `count` candidates, if any.
  std::optional<std::vector<const Candidate*>> run(std::size_t count) {
    std::vector<const Candidate*> all;
    for (std::size_t i = 0; i < count; ++i) all.push_back(&cands_[i]);
    auto hnf = hermite_normal_form(integer_columns(all, r_));
    if (hnf.cols() != r_) return std::nullopt;
    for (std::size_t i = 0; i < r_; ++i)
      if (hnf(i, i) != 1) return std::nullopt;  // the candidates do not even generate
    std::vector<const Candidate*> chosen;
    if (dfs(0, count, chosen)) return chosen;
    return std::nullopt;
  }

 private:
  bool dfs(std::size_t start, std::size_t count, std::vector<const Candidate*>& chosen) {
    if (chosen.size() == r_) return true;
    for (std::size_t i = start; i + (r_ - chosen.size()) <= count; ++i) {
      if (++nodes_ > budget_) fail("search_too_large", "basis search exceeded its node budget");
      chosen.push_back(&cands_[i]);
      if (maximal_minor_gcd(integer_columns(chosen, r_)) == 1 && dfs(i + 1, count, chosen)) return true;
      chosen.pop_back();
    }
    return false;
  }

  const std::vector<Candidate>& cands_;
  std::size_t r_, budget_, nodes_ = 0;
};

}  // namespace

LambdaResult compute_lambda(const NormedLattice& lattice, const LambdaOptions& options) {
  const std::size_t r = lattice.lattice.rank();
  LambdaResult out;
  out.rank = r;
  if (lattice.norm.dim() != lattice.lattice.dim()) fail("dimension_mismatch", "norm and lattice live in different spaces");
  if (r == 0) return out;
  if (r > options.max_rank)
    fail("rank_too_large", "rank " + std::to_string(r) + " exceeds the enumeration bound " +
                               std::to_string(options.max_rank) + "; lambda_z_upper_bound gives a labeled upper bound");

  // Enumerate in a reduced basis: the coordinate box is much smaller than for
  // the Hermite basis. Its norms bound lambda_Z from above.
  auto reduced = lambda_z_upper_bound(lattice);
  const Rational lambda0 = reduced.upper_bound;
  const Matrix<Rational> b = Matrix<Rational>::from_columns(reduced.basis, lattice.lattice.dim());

  BallEnumerator ball(lattice.norm, b, lambda0, options.max_candidates);
  auto top = ball.range(r - 1, std::vector<long>(r, 0));
  if (!top) fail("internal", "empty lattice ball");
  if (top->second - top->first > 10'000'000) fail("enumeration_too_large", "coordinate range is too large");
  // Top coordinate values split across workers; merged in value order.
  auto chunks = parallel_map<std::vector<Candidate>>(
      static_cast<std::size_t>(top->second - top->first + 1), options.jobs, [&](std::size_t k) {
        BallEnumerator::reset_nodes();
        return ball.subtree(top->first + static_cast<long>(k));
      });
  std::vector<Candidate> cands;
  for (auto& ch : chunks)
    for (auto& c : ch) cands.push_back(std::move(c));
  // Ties broken on the ambient vector (sign fixed, sparse and short first) so
  // the chosen bases do not depend on the reduced basis.
  std::vector<std::pair<Vector<Rational>, Rational>> key(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) {
    Vector<Rational> v = combine(b, cands[i].coords);
    auto nz = std::find_if(v.begin(), v.end(), [](const Rational& x) { return !is_zero(x); });
    if (sgn(*nz) < 0) {
      for (auto& x : v) x = -x;
      for (auto& x : cands[i].coords) x = -x;
    }
    Rational height = 0;
    for (const auto& x : v) height += abs(x);
    key[i] = {std::move(v), std::move(height)};
  }
  std::vector<std::size_t> order(cands.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (int c = cmp(cands[i].norm, cands[j].norm)) return c < 0;
    auto support = [](const Vector<Rational>& v) {
      return std::count_if(v.begin(), v.end(), [](const Rational& x) { return !is_zero(x); });
    };
    auto si = support(key[i].first), sj = support(key[j].first);
    if (si != sj) return si < sj;
    if (int c = cmp(key[i].second, key[j].second)) return c < 0;
    return key[j].first < key[i].first;
  });
  {
    std::vector<Candidate> sorted;
    sorted.reserve(cands.size());
    for (auto i : order) sorted.push_back(std::move(cands[i]));
    cands = std::move(sorted);
  }

  // lambda_Q: first norm at which the candidates span.
  std::vector<Vector<Rational>> echelon;
  std::vector<std::size_t> pivots;
  std::size_t q_end = 0;
  for (std::size_t i = 0; i < cands.size() && out.q_basis.size() < r; ++i) {
    Vector<Rational> v(cands[i].coords.begin(), cands[i].coords.end());
    for (std::size_t k = 0; k < echelon.size(); ++k)
      if (!is_zero(v[pivots[k]])) {
        Rational f = v[pivots[k]] / echelon[k][pivots[k]];
        for (std::size_t j = 0; j < r; ++j) v[j] -= f * echelon[k][j];
      }
    auto nz = std::find_if(v.begin(), v.end(), [](const Rational& x) { return !is_zero(x); });
    if (nz == v.end()) continue;
    pivots.push_back(static_cast<std::size_t>(nz - v.begin()));
    echelon.push_back(std::move(v));
    out.q_basis.push_back(combine(b, cands[i].coords));
    out.lambda_q = cands[i].norm;
    q_end = i + 1;
  }
  (void)q_end;

  // lambda_Z: binary search over the attained norm values >= lambda_Q.
  std::vector<std::size_t> ends;  // ends[k]: number of candidates with norm <= k-th distinct value
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (cands[i].norm >= out.lambda_q && (i + 1 == cands.size() || cands[i + 1].norm != cands[i].norm))
      ends.push_back(i + 1);
  BasisSearch search(cands, r, options.max_search_nodes);
  std::size_t lo = 0, hi = ends.size() - 1;
  auto best = search.run(ends[hi]);
  if (!best) fail("internal", "the lattice basis was not found among the enumerated points");
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (auto got = search.run(ends[mid])) {
      best = std::move(got);
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  best = search.run(ends[lo]);
  out.lambda_z = cands[ends[lo] - 1].norm;
  for (const auto* c : *best) out.z_basis.push_back(combine(b, c->coords));
  return out;
}

LambdaUpperBound lambda_z_upper_bound(const NormedLattice& lattice) {
  auto basis = lattice.lattice.basis().columns();
  std::vector<Rational> norms;
  for (const auto& v : basis) norms.push_back(lattice.norm.norm(v));
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        for (int s : {1, -1}) {
          Vector<Rational> v = basis[i];
          for (std::size_t k = 0; k < v.size(); ++k) v[k] += s * basis[j][k];
          Rational n = lattice.norm.norm(v);
          if (n < norms[i]) {
            basis[i] = std::move(v);
            norms[i] = n;
            changed = true;
          }
        }
      }
  }
  Rational ub = 0;
  for (const auto& n : norms) ub = std::max(ub, n);
  return {ub, basis};
}

AdelicSpace graded_piece(const GradedRecipe& recipe, unsigned n) {
  auto monomials = monomial_basis(recipe.m, n);
  const std::size_t d = monomials.size();
  std::map<unsigned long, NormedSpace> finite;
  for (const auto& [p, w] : recipe.finite_weights) {
    if (w.size() != recipe.m + 1) fail("dimension_mismatch", "one finite weight per variable expected");
    auto f = ValuedField::padic(p);
    std::vector<Magnitude> weights;
    for (const auto& e : monomials) {
      Rational v = 1;
      for (std::size_t i = 0; i < e.size(); ++i) v *= ultranorm::pow(w[i], e[i]);
      weights.push_back(f.magnitude(v));
    }
    finite.emplace(p, NormedSpace::standard(f, std::move(weights)));
  }
  Rational c = recipe.scale * ultranorm::pow(recipe.decay, n);
  auto arch = recipe.kind == ArchimedeanKind::sup ? PolyhedralNorm::scaled_sup(d, c) : PolyhedralNorm::scaled_l1(d, c);
  return AdelicSpace(d, std::move(finite), std::move(arch));
}

GradedAdelic GradedAdelic::from_recipe(const GradedRecipe& recipe, unsigned max_degree) {
  std::map<unsigned, AdelicSpace> pieces;
  for (unsigned n = 1; n <= max_degree; ++n) pieces.emplace(n, graded_piece(recipe, n));
  return GradedAdelic(std::move(pieces));
}

const AdelicSpace& GradedAdelic::at(unsigned n) const {
  auto it = pieces_.find(n);
  if (it == pieces_.end()) fail("missing_degree", "graded structure has no degree " + std::to_string(n));
  return it->second;
}

namespace {

double log_rational(const Rational& x) {
  long en, ed;
  double mn = mpz_get_d_2exp(&en, x.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, x.get_den_mpz_t());
  return std::log(mn / md) + static_cast<double>(en - ed) * std::log(2.0);
}

}  // namespace

std::optional<DecayFit> fit_lambda_decay(std::span<const GradedRow> rows) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& row : rows)
    if (sgn(row.lambda_q) > 0) pts.emplace_back(row.n, log_rational(row.lambda_q));
  if (pts.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0, sxx = 0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  double slope = sxy / sxx;
  return DecayFit{slope, my - slope * mx, std::exp(slope), pts.size()};
}

GradedTable graded_lambda_table(const GradedAdelic& graded, unsigned max_degree, const LambdaOptions& options) {
  GradedTable out;
  for (unsigned n = 1; n <= max_degree; ++n) {
    auto lat = finite_unit_lattice(graded.at(n));
    auto lam = compute_lambda(lat, options);
    out.rows.push_back({n, lam.rank, lam.lambda_q, lam.lambda_z});
  }
  out.fit = fit_lambda_decay(out.rows);
  return out;
}

NakaiResult nakai_basis_search(const GradedAdelic& graded, unsigned n, const LambdaOptions& options) {
  const AdelicSpace& space = graded.at(n);
  auto lat = finite_unit_lattice(space);
  auto lam = compute_lambda(lat, options);
  NakaiResult out{n, lam.lambda_z < 1, lam.rank, lam.lambda_q, lam.lambda_z, {}, {}, {}};
  if (!out.found) return out;
  out.basis = lam.z_basis;
  for (const auto& v : out.basis) {
    out.archimedean_norms.push_back(space.archimedean().norm(v));
    Rational worst = 0;
    for (const auto& [p, norm] : space.finite()) worst = std::max(worst, norm.norm(v).value());
    // Basis vectors are primitive at unlisted primes, where the norm is exactly 1.
    if (space.finite().empty()) worst = 1;
    out.max_finite_norms.push_back(worst);
  }
  return out;
}

}  // namespace ultranorm
