#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ultranorm/normed_space.hpp"
#include "ultranorm/sections.hpp"

namespace ultranorm {

/// Quotient metric on O(1) over P^m induced by a norm on H^0(P^m, O(1)).
///
/// The base space has ambient coordinates = coefficients of linear forms in
/// x_0..x_m; its orthogonal basis vectors e_i are linear forms with weights
/// ||e_i||. At a point x the metric is |s|(x) = |s(x)| / max_i |e_i(x)|/||e_i||^n
/// for s of degree n, evaluated at any representative.
class QuotientMetric {
 public:
  explicit QuotientMetric(NormedSpace base);
  /// Coordinates x_i with ||x_i|| = weights[i].
  static QuotientMetric diagonal(const ValuedField& field, std::vector<Magnitude> weights);

  const NormedSpace& base() const { return base_; }
  const ValuedField& field() const { return base_.field(); }
  std::size_t num_vars() const { return base_.dim(); }
  std::size_t m() const { return base_.dim() - 1; }
  bool is_diagonal() const { return base_.is_diagonal(); }

  /// max_i |e_i(x)| / ||e_i|| at the given representative.
  Magnitude frame(std::span<const Rational> point) const;

  /// s rewritten as a polynomial in the orthogonal basis forms e_0..e_m.
  Section to_frame_variables(const Section& s) const;

  /// Degree-n sections with the Gauss norm: the monomials e^alpha form an
  /// orthogonal basis with weights prod ||e_i||^alpha_i.
  NormedSpace section_space(unsigned n) const;

 private:
  NormedSpace base_;
  Matrix<Rational> substitution_;  // x_k = sum_i substitution_(k, i) * e_i
};

/// |s|_{h^n}(x), s of degree n.
Magnitude point_metric(const QuotientMetric& h, const Section& s, std::span<const Rational> point);

/// sup over P^m,an of |s|_{h^n}: the weighted Gauss norm in frame variables.
Magnitude sup_norm(const QuotientMetric& h, const Section& s);

/// Sup norm of s restricted to Y (s is a representative on P^m).
Magnitude restricted_sup_norm(const QuotientMetric& h, const Section& s, const Subvariety& y);

/// Sup norm on Y of the section of O(degree)|_Y with fiber values `values`
/// at the normalized points of Y (points only).
Magnitude restricted_sup_norm_values(const QuotientMetric& h, std::span<const Rational> values, unsigned degree,
                                     const Subvariety& y);

/// Quotient metric of Y = linear subspace: Y ≅ P^k via Y's parametrization.
QuotientMetric restrict_metric(const QuotientMetric& h, const Subvariety& y);

/// |.|^quot_{(R_n, N)}(x) / |.|_{h^n}(x) with the numerator computed by
/// coset minimization (quotient norm of N onto the fiber at x).
Magnitude metric_gap(const NormedSpace& degree_norm, unsigned n, const QuotientMetric& h,
                     std::span<const Rational> point);

/// exp(sigma(x)) for h^n: metric_gap with the sup norm of h^n. n = 0 gives 1.
Magnitude sigma(const QuotientMetric& h, unsigned n, std::span<const Rational> point);

/// A rational point where |s|(x) = sup_norm(s), found by lifting a point of
/// P^m(F_p) where the reduced frame polynomial does not vanish. Requires a
/// p-adic field and frame weights in p^Z; nullopt if no such residue point.
std::optional<Vector<Rational>> sup_attaining_point(const QuotientMetric& h, const Section& s);

/// Degree-indexed norms on section spaces.
class MetricFamily {
 public:
  /// Checks ||e f|| <= ||e|| ||f|| for (a bounded sample of) products of basis vectors.
  MetricFamily(std::size_t num_vars, std::map<unsigned, NormedSpace> norms);
  /// n -> scale^n * (Gauss norm of h^n), n = 1..max_degree.
  static MetricFamily scaled_sup_norms(const QuotientMetric& h, unsigned max_degree, const Rational& scale);

  const NormedSpace& at(unsigned n) const;
  bool has(unsigned n) const { return norms_.count(n) > 0; }
  std::size_t num_vars() const { return num_vars_; }

 private:
  std::size_t num_vars_;
  std::map<unsigned, NormedSpace> norms_;
};

struct MuEstimate {
  std::vector<Magnitude> ratios;                          // r_n, n = 1..N
  std::vector<std::pair<Magnitude, unsigned>> running_min;  // argmin of r_k^(1/k), k <= n
};

MuEstimate mu_estimate(const MetricFamily& family, const QuotientMetric& h_ref, std::span<const Rational> point,
                       unsigned max_degree);

}  // namespace ultranorm
