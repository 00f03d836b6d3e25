#include "ultranorm/metric.hpp"

#include <algorithm>

namespace ultranorm {

namespace {

Magnitude weight_power(const std::vector<Magnitude>& weights, const Exponent& e) {
  Magnitude out = Magnitude::one(weights.empty() ? 0 : weights.front().base());
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] > 0) out *= weights[i].pow(e[i]);
  return out;
}

Rational scalar_power(const Vector<Rational>& c, const Exponent& e) {
  Rational out = 1;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] > 0) out *= ultranorm::pow(c[i], e[i]);
  return out;
}

long residue_mod(const Rational& x, unsigned long p) {
  Integer num = x.get_num() % Integer(p);
  Integer den = x.get_den(), inv, mod(p);
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  Integer r = num * inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
  return static_cast<long>(r.get_si());
}

}  // namespace

QuotientMetric::QuotientMetric(NormedSpace base) : base_(std::move(base)) {
  if (base_.dim() == 0) fail("dimension_mismatch", "quotient metric needs at least one variable");
  substitution_ = base_.inverse_basis().transpose();
}

QuotientMetric QuotientMetric::diagonal(const ValuedField& field, std::vector<Magnitude> weights) {
  return QuotientMetric(NormedSpace::standard(field, std::move(weights)));
}

Magnitude QuotientMetric::frame(std::span<const Rational> point) const {
  if (point.size() != num_vars()) fail("dimension_mismatch", "point lives in the wrong projective space");
  Magnitude best = Magnitude::zero(field().prime());
  const auto& b = base_.basis();
  for (std::size_t i = 0; i < num_vars(); ++i) {
    Rational v = 0;
    for (std::size_t k = 0; k < num_vars(); ++k)
      if (!is_zero(b(k, i))) v += b(k, i) * point[k];
    if (is_zero(v)) continue;
    Magnitude m = field().abs(v) / base_.weights()[i];
    if (best < m) best = m;
  }
  if (best.is_zero()) fail("invalid_point", "point is not on P^m");
  return best;
}

Section QuotientMetric::to_frame_variables(const Section& s) const {
  if (s.num_vars() != num_vars()) fail("dimension_mismatch", "section in the wrong number of variables");
  if (!is_diagonal()) return substitute_linear(s, substitution_);
  Vector<Rational> inv(num_vars());
  for (std::size_t i = 0; i < num_vars(); ++i) inv[i] = substitution_(i, i);
  Section out(num_vars(), s.degree());
  for (const auto& [e, c] : s.coefficients()) out.set(e, c * scalar_power(inv, e));
  return out;
}

NormedSpace QuotientMetric::section_space(unsigned n) const {
  MonomialIndex index(m(), n);
  const std::size_t d = index.size();
  std::vector<Magnitude> weights;
  weights.reserve(d);
  for (const auto& e : index.monomials()) weights.push_back(weight_power(base_.weights(), e));
  Matrix<Rational> basis(d, d), inv(d, d);
  if (is_diagonal()) {
    Vector<Rational> c(num_vars()), ci(num_vars());
    for (std::size_t i = 0; i < num_vars(); ++i) {
      c[i] = base_.basis()(i, i);
      ci[i] = substitution_(i, i);
    }
    for (std::size_t j = 0; j < d; ++j) {
      basis(j, j) = scalar_power(c, index.monomials()[j]);
      inv(j, j) = scalar_power(ci, index.monomials()[j]);
    }
  } else {
    std::vector<Section> forms;
    for (std::size_t i = 0; i < num_vars(); ++i) forms.push_back(Section::linear(base_.basis_vector(i)));
    for (std::size_t j = 0; j < d; ++j) {
      const auto& e = index.monomials()[j];
      Section prod = Section::constant(num_vars(), Rational(1));
      for (std::size_t i = 0; i < num_vars(); ++i)
        for (unsigned t = 0; t < e[i]; ++t) prod = prod * forms[i];
      auto col = prod.to_vector(index);
      for (std::size_t r = 0; r < d; ++r) basis(r, j) = col[r];
      Section mono(num_vars(), n);
      mono.set(e, Rational(1));
      auto icol = to_frame_variables(mono).to_vector(index);
      for (std::size_t r = 0; r < d; ++r) inv(r, j) = icol[r];
    }
  }
  return NormedSpace::with_inverse(field(), std::move(basis), std::move(inv), std::move(weights));
}

Magnitude point_metric(const QuotientMetric& h, const Section& s, std::span<const Rational> point) {
  auto x = normalize_point(h.field(), point);
  Rational v = s.evaluate(x);
  if (is_zero(v)) return Magnitude::zero(h.field().prime());
  return h.field().abs(v) / h.frame(x).pow(s.degree());
}

Magnitude sup_norm(const QuotientMetric& h, const Section& s) {
  Section f = h.to_frame_variables(s);
  Magnitude best = Magnitude::zero(h.field().prime());
  for (const auto& [e, c] : f.coefficients()) {
    Magnitude m = h.field().abs(c) * weight_power(h.base().weights(), e);
    if (best < m) best = m;
  }
  return best;
}

QuotientMetric restrict_metric(const QuotientMetric& h, const Subvariety& y) {
  if (y.is_points()) fail("unsupported_subvariety", "metric restriction needs a linear subvariety");
  Matrix<Rational> z = y.parametrization();
  return QuotientMetric(quotient_norm(h.base(), z.transpose()).target);
}

Magnitude restricted_sup_norm(const QuotientMetric& h, const Section& s, const Subvariety& y) {
  if (y.num_vars() != h.num_vars()) fail("dimension_mismatch", "subvariety lives in the wrong projective space");
  if (y.is_points()) {
    Magnitude best = Magnitude::zero(h.field().prime());
    for (const auto& pt : y.as_points().points) best = max(best, point_metric(h, s, pt));
    return best;
  }
  return sup_norm(restrict_metric(h, y), substitute_linear(s, y.parametrization()));
}

Magnitude restricted_sup_norm_values(const QuotientMetric& h, std::span<const Rational> values, unsigned degree,
                                     const Subvariety& y) {
  if (!y.is_points()) fail("unsupported_subvariety", "fiber values need a point subvariety");
  const auto& pts = y.as_points().points;
  if (values.size() != pts.size()) fail("dimension_mismatch", "one value per point expected");
  Magnitude best = Magnitude::zero(h.field().prime());
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (is_zero(values[j])) continue;
    auto x = normalize_point(h.field(), pts[j]);
    best = max(best, h.field().abs(values[j]) / h.frame(x).pow(degree));
  }
  return best;
}

Magnitude metric_gap(const NormedSpace& degree_norm, unsigned n, const QuotientMetric& h,
                     std::span<const Rational> point) {
  MonomialIndex index(h.m(), n);
  if (degree_norm.dim() != index.size()) fail("dimension_mismatch", "norm does not live on degree-n sections");
  auto x = normalize_point(h.field(), point);
  Matrix<Rational> ev(1, index.size());
  for (std::size_t j = 0; j < index.size(); ++j) {
    Rational v = 1;
    const auto& e = index.monomials()[j];
    for (std::size_t k = 0; k < e.size(); ++k)
      for (unsigned t = 0; t < e[k]; ++t) v *= x[k];
    ev(0, j) = v;
  }
  auto q = quotient_norm(degree_norm, ev);
  // ||1||_quot in the one-dimensional fiber.
  const Rational one = 1;
  Magnitude fiber_one = q.target.norm(std::span<const Rational>(&one, 1));
  return fiber_one * h.frame(x).pow(n);
}

Magnitude sigma(const QuotientMetric& h, unsigned n, std::span<const Rational> point) {
  if (n == 0) {
    normalize_point(h.field(), point);
    return Magnitude::one(h.field().prime());
  }
  return metric_gap(h.section_space(n), n, h, point);
}

std::optional<Vector<Rational>> sup_attaining_point(const QuotientMetric& h, const Section& s) {
  if (h.field().kind() != FieldKind::padic) return std::nullopt;
  if (s.is_zero()) return std::nullopt;
  const unsigned long p = h.field().prime();
  const std::size_t nv = h.num_vars();
  std::vector<long> k(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    const auto& w = h.base().weights()[i];
    if (w.coefficient() != 1) return std::nullopt;
    k[i] = -w.exponent();  // w = p^k
  }
  // g(u) = f(p^-k u); its coefficient magnitudes are the Gauss terms.
  Section f = h.to_frame_variables(s);
  Vector<Rational> scale(nv);
  for (std::size_t i = 0; i < nv; ++i) scale[i] = ultranorm::pow(Rational(p), -k[i]);
  Section g(nv, s.degree());
  for (const auto& [e, c] : f.coefficients()) g.set(e, c * scalar_power(scale, e));
  Rational lead;
  Magnitude best;
  for (const auto& [e, c] : g.coefficients()) {
    Magnitude m = h.field().abs(c);
    if (best < m) {
      best = m;
      lead = c;
    }
  }
  std::vector<std::pair<Exponent, long>> reduced;
  for (const auto& [e, c] : g.coefficients()) {
    Rational u = c / lead;
    if (valuation(u, p) == 0) reduced.emplace_back(e, residue_mod(u, p));
  }
  Integer total;
  mpz_ui_pow_ui(total.get_mpz_t(), p, nv);
  if (total > 2000000) return std::nullopt;
  std::vector<long> u(nv, 0);
  const unsigned long count = total.get_ui();
  for (unsigned long idx = 1; idx < count; ++idx) {
    unsigned long t = idx;
    for (std::size_t i = nv; i-- > 0;) {
      u[i] = static_cast<long>(t % p);
      t /= p;
    }
    std::size_t first = 0;
    while (u[first] == 0) ++first;
    if (u[first] != 1) continue;  // one representative per projective point
    long acc = 0;
    for (const auto& [e, c] : reduced) {
      long term = c;
      for (std::size_t i = 0; i < nv; ++i)
        for (unsigned r = 0; r < e[i]; ++r) term = (term * u[i]) % static_cast<long>(p);
      acc = (acc + term) % static_cast<long>(p);
    }
    if (acc == 0) continue;
    Vector<Rational> frame_values(nv);
    for (std::size_t i = 0; i < nv; ++i) frame_values[i] = scale[i] * u[i];
    // x = (B^T)^-1 * (frame values)
    return h.base().inverse_basis().transpose() * frame_values;
  }
  return std::nullopt;
}

MetricFamily::MetricFamily(std::size_t num_vars, std::map<unsigned, NormedSpace> norms)
    : num_vars_(num_vars), norms_(std::move(norms)) {
  if (num_vars_ == 0) fail("dimension_mismatch", "metric family needs at least one variable");
  const std::size_t m = num_vars_ - 1;
  for (const auto& [n, space] : norms_)
    if (space.dim() != section_dimension(m, n))
      fail("dimension_mismatch", "degree-" + std::to_string(n) + " norm has the wrong dimension");
  constexpr std::size_t kSample = 6;
  for (const auto& [a, sa] : norms_)
    for (const auto& [b, sb] : norms_) {
      if (b < a || !norms_.count(a + b)) continue;
      const auto& target = norms_.at(a + b);
      auto ia = monomial_basis(m, a), ib = monomial_basis(m, b);
      MonomialIndex iab(m, a + b);
      for (std::size_t i = 0; i < std::min(kSample, sa.dim()); ++i)
        for (std::size_t j = 0; j < std::min(kSample, sb.dim()); ++j) {
          Section s = Section::from_vector(num_vars_, a, ia, sa.basis_vector(i));
          Section t = Section::from_vector(num_vars_, b, ib, sb.basis_vector(j));
          if (target.norm((s * t).to_vector(iab)) > sa.weights()[i] * sb.weights()[j])
            fail("not_submultiplicative", "family violates ||st|| <= ||s|| ||t|| in degrees " +
                                              std::to_string(a) + "+" + std::to_string(b));
        }
    }
}

MetricFamily MetricFamily::scaled_sup_norms(const QuotientMetric& h, unsigned max_degree, const Rational& scale) {
  std::map<unsigned, NormedSpace> norms;
  for (unsigned n = 1; n <= max_degree; ++n) {
    NormedSpace g = h.section_space(n);
    Magnitude factor = h.field().magnitude(ultranorm::pow(scale, n));
    std::vector<Magnitude> w;
    for (const auto& x : g.weights()) w.push_back(x * factor);
    norms.emplace(n, NormedSpace::with_inverse(h.field(), g.basis(), g.inverse_basis(), std::move(w)));
  }
  return MetricFamily(h.num_vars(), std::move(norms));
}

const NormedSpace& MetricFamily::at(unsigned n) const {
  auto it = norms_.find(n);
  if (it == norms_.end()) fail("missing_degree", "metric family has no degree " + std::to_string(n));
  return it->second;
}

MuEstimate mu_estimate(const MetricFamily& family, const QuotientMetric& h_ref, std::span<const Rational> point,
                       unsigned max_degree) {
  MuEstimate out;
  for (unsigned n = 1; n <= max_degree; ++n) {
    Magnitude r = metric_gap(family.at(n), n, h_ref, point);
    if (out.running_min.empty() || compare_root(r, n, out.running_min.back().first,
                                                out.running_min.back().second) < 0)
      out.running_min.emplace_back(r, n);
    else
      out.running_min.push_back(out.running_min.back());
    out.ratios.push_back(std::move(r));
  }
  return out;
}

}  // namespace ultranorm
