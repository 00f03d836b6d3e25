#include "ultranorm/extension.hpp"

#include <mpfr.h>

#include <algorithm>

namespace ultranorm {

namespace {

std::vector<Vector<Rational>> normalized_points(const ValuedField& field, const Subvariety& y) {
  std::vector<Vector<Rational>> out;
  for (const auto& p : y.as_points().points) out.push_back(normalize_point(field, p));
  return out;
}

}  // namespace

ExtensionProblem::ExtensionProblem(QuotientMetric metric, Subvariety y, std::optional<Section> representative,
                                   std::optional<std::vector<Rational>> point_values)
    : metric_(std::move(metric)), y_(std::move(y)), representative_(std::move(representative)) {
  const auto& field = metric_.field();
  if (y_.num_vars() != metric_.num_vars()) fail("dimension_mismatch", "subvariety lives in the wrong projective space");
  y_.validate(field);
  if (!representative_ && !point_values) fail("missing_section", "give a representative or point values for l");
  if (representative_) {
    if (representative_->num_vars() != metric_.num_vars())
      fail("dimension_mismatch", "representative has the wrong number of variables");
    if (representative_->degree() != 1) fail("degree_mismatch", "the representative of l must be linear");
  }
  if (point_values) {
    if (!y_.is_points()) fail("unsupported_subvariety", "point values need a point subvariety");
    if (point_values->size() != y_.as_points().points.size())
      fail("dimension_mismatch", "one value of l per point expected");
  }
  if (y_.is_points()) {
    auto pts = normalized_points(field, y_);
    if (point_values) {
      values_ = *point_values;
      if (representative_)
        for (std::size_t j = 0; j < pts.size(); ++j)
          if (representative_->evaluate(pts[j]) != values_[j])
            fail("representative_mismatch", "representative does not restrict to the given values of l");
    } else {
      for (const auto& x : pts) values_.push_back(representative_->evaluate(x));
    }
    l_norm_ = restricted_sup_norm_values(metric_, values_, 1, y_);
  } else {
    l_norm_ = restricted_sup_norm(metric_, *representative_, y_);
  }
  if (l_norm_.is_zero()) fail("zero_section", "l vanishes on Y");
}

Vector<Rational> ExtensionProblem::particular_solution(unsigned n) const {
  const std::size_t m = metric_.m();
  MonomialIndex index(m, n);
  if (representative_) return power(*representative_, n).to_vector(index);
  auto pts = normalized_points(metric_.field(), y_);
  Vector<Rational> rhs;
  for (const auto& v : values_) rhs.push_back(ultranorm::pow(v, n));
  auto sol = solve(evaluation_matrix(pts, m, n), std::span<const Rational>(rhs));
  if (!sol) fail("degree_too_small", "l^" + std::to_string(n) + " does not extend to P^m in this degree");
  return std::move(*sol);
}

Lift min_norm_lift(const ExtensionProblem& problem, unsigned n) {
  const auto& h = problem.metric();
  const auto base = h.field().prime();
  if (n == 0) return {Section::constant(h.num_vars(), Rational(1)), Magnitude::one(base), Magnitude::one(base)};
  NormedSpace space = h.section_space(n);
  Vector<Rational> s0 = problem.particular_solution(n);
  auto kernel = restriction_kernel(h.field(), problem.subvariety(), h.m(), n);
  auto d = distance_to_subspace(space, std::span<const Rational>(s0), std::span<const Vector<Rational>>(kernel));
  for (std::size_t i = 0; i < s0.size(); ++i) s0[i] -= d.minimizer[i];
  Section s = Section::from_vector(h.num_vars(), n, monomial_basis(h.m(), n), s0);
  Magnitude ratio = d.distance / problem.restricted_norm().pow(n);
  return {std::move(s), std::move(d.distance), std::move(ratio)};
}

DegreeRatios extension_ratios(const ExtensionProblem& problem, unsigned max_degree) {
  DegreeRatios out;
  for (unsigned n = 1; n <= max_degree; ++n) {
    try {
      out.ratios.emplace_back(min_norm_lift(problem, n).ratio);
    } catch (const PreconditionError& e) {
      if (e.code() != "degree_too_small") throw;
      out.ratios.emplace_back(std::nullopt);
    }
  }
  return out;
}

std::vector<SubadditivityViolation> subadditivity_check(const DegreeRatios& table) {
  std::vector<SubadditivityViolation> out;
  const auto& r = table.ratios;
  const unsigned big = static_cast<unsigned>(r.size());
  for (unsigned m = 1; m <= big; ++m)
    for (unsigned n = m; m + n <= big; ++n) {
      const auto &a = r[m - 1], &b = r[n - 1], &c = r[m + n - 1];
      if (!a || !b) continue;
      if (!c || *c > *a * *b) out.push_back({m, n, *a, *b, c.value_or(Magnitude::zero())});
    }
  return out;
}

LambdaEstimate lambda_estimate(DegreeRatios table) {
  LambdaEstimate out;
  std::optional<std::pair<Magnitude, unsigned>> best;
  for (unsigned n = 1; n <= table.ratios.size(); ++n) {
    const auto& r = table.ratios[n - 1];
    if (r && (!best || compare_root(*r, n, best->first, best->second) < 0)) best = std::make_pair(*r, n);
    out.running_inf.push_back(best);
  }
  out.table = std::move(table);
  return out;
}

LambdaEstimate lambda_estimate(const ExtensionProblem& problem, unsigned max_degree) {
  return lambda_estimate(extension_ratios(problem, max_degree));
}

LaurentLift extend_trivial_via_laurent(const ExtensionProblem& problem, unsigned n) {
  const auto& h = problem.metric();
  if (h.field().kind() != FieldKind::trivial) fail("unsupported_field", "the Laurent path needs the trivial valuation");
  if (n == 0) return {Section::constant(h.num_vars(), Rational(1)), 2, Magnitude::one(), {Rational(1)}};

  NormedSpace space = h.section_space(n);
  auto values = norm_value_set(space);
  const unsigned long big_p = choose_laurent_base(values);
  LaurentNormedSpace ext = scalar_extension(space, big_p);

  Vector<Rational> s0 = problem.particular_solution(n);
  auto kernel = restriction_kernel(h.field(), problem.subvariety(), h.m(), n);
  std::vector<Vector<RatFunc>> kernel_ext;
  for (const auto& k : kernel) kernel_ext.push_back(to_ratfunc(k));
  Vector<RatFunc> s0_ext = to_ratfunc(s0);
  auto d = distance_to_subspace(ext, std::span<const RatFunc>(s0_ext), std::span<const Vector<RatFunc>>(kernel_ext));
  Vector<RatFunc> best = s0_ext;
  for (std::size_t i = 0; i < best.size(); ++i) best[i] -= d.minimizer[i];

  // Orthogonal basis (e_1..e_t, e_{t+1}..e_r) with the tail spanning the kernel.
  Orthogonalizer<RatFunc> orth(ext);
  std::vector<Vector<RatFunc>> tail;
  for (const auto& k : kernel_ext)
    if (auto g = orth.push(k)) tail.push_back(std::move(g->first));
  std::vector<Vector<RatFunc>> head;
  for (std::size_t i = 0; i < ext.dim() && orth.size() < ext.dim(); ++i) {
    Vector<RatFunc> e(ext.dim(), RatFunc());
    e[i] = RatFunc(Rational(1));
    if (auto g = orth.push(e)) head.push_back(std::move(g->first));
  }
  std::vector<Vector<RatFunc>> cols = head;
  cols.insert(cols.end(), tail.begin(), tail.end());
  auto coeffs = solve(Matrix<RatFunc>::from_columns(cols, ext.dim()), std::span<const RatFunc>(best));
  if (!coeffs) fail("internal", "adapted basis does not span the section space");

  LaurentLift out{Section(h.num_vars(), n), big_p, Magnitude::zero(), {}};
  Vector<Rational> s(ext.dim(), Rational(0));
  for (std::size_t i = 0; i < head.size(); ++i) {
    const RatFunc& a = (*coeffs)[i];
    if (!a.is_constant()) fail("t_dependent_coefficient", "retained coefficient depends on T");
    Rational c = a.constant_value();
    out.retained.push_back(c);
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (!head[i][j].is_constant()) fail("t_dependent_coefficient", "adapted basis vector depends on T");
      s[j] += c * head[i][j].constant_value();
    }
  }
  Magnitude sup = space.norm(s);
  if (sup.value() != d.distance.value()) fail("internal", "Laurent projection changed the norm");
  out.section = Section::from_vector(h.num_vars(), n, monomial_basis(h.m(), n), s);
  out.ratio = sup / problem.restricted_norm().pow(n);
  return out;
}

bool log_at_most(const Rational& r, const Rational& t) {
  if (sgn(r) <= 0) fail("invalid_argument", "log of a non-positive number");
  if (r == 1) return sgn(t) >= 0;
  if (r < 1 && sgn(t) >= 0) return true;
  if (r > 1 && sgn(t) <= 0) return false;
  // log r is irrational for rational r != 1, so refinement terminates.
  for (mpfr_prec_t prec = 64;; prec *= 2) {
    mpfr_t x, lo, hi, tlo, thi;
    mpfr_inits2(prec, x, lo, hi, tlo, thi, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_q(x, r.get_mpq_t(), MPFR_RNDD);
    mpfr_log(lo, x, MPFR_RNDD);
    mpfr_set_q(x, r.get_mpq_t(), MPFR_RNDU);
    mpfr_log(hi, x, MPFR_RNDU);
    mpfr_set_q(tlo, t.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(thi, t.get_mpq_t(), MPFR_RNDU);
    int verdict = mpfr_lessequal_p(hi, tlo) ? 1 : (mpfr_greater_p(lo, thi) ? 0 : -1);
    mpfr_clears(x, lo, hi, tlo, thi, static_cast<mpfr_ptr>(nullptr));
    if (verdict >= 0) return verdict == 1;
    if (prec > (1 << 20)) fail("internal", "logarithm comparison did not separate");
  }
}

ExtensionTheoremReport check_extension_theorem(const DegreeRatios& table, const Rational& epsilon) {
  if (sgn(epsilon) < 0) fail("invalid_argument", "epsilon must be non-negative");
  ExtensionTheoremReport out;
  for (unsigned n = 1; n <= table.ratios.size(); ++n) {
    const auto& r = table.ratios[n - 1];
    if (!r)
      out.holds.emplace_back(std::nullopt);
    else
      out.holds.emplace_back(log_at_most(r->value(), epsilon * n));
  }
  for (std::size_t i = out.holds.size(); i-- > 0;) {
    if (!out.holds[i].value_or(false)) break;
    out.n0 = static_cast<unsigned>(i + 1);
  }
  return out;
}

}  // namespace ultranorm
