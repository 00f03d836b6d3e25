#pragma once

#include <optional>
#include <vector>

#include "ultranorm/metric.hpp"

namespace ultranorm {

/// Extend l^n from Y to P^m with minimal sup norm.
///
/// l is given by a degree-1 representative on P^m, by its values at the
/// normalized points of Y, or both (then they must agree).
class ExtensionProblem {
 public:
  ExtensionProblem(QuotientMetric metric, Subvariety y, std::optional<Section> representative,
                   std::optional<std::vector<Rational>> point_values = std::nullopt);

  const QuotientMetric& metric() const { return metric_; }
  const Subvariety& subvariety() const { return y_; }
  const std::optional<Section>& representative() const { return representative_; }
  /// ||l||_{Y,h}.
  const Magnitude& restricted_norm() const { return l_norm_; }

  /// Coefficient vector (monomial_basis(m, n)) of some s with s|_Y = l^n.
  /// Throws degree_too_small if no such s exists.
  Vector<Rational> particular_solution(unsigned n) const;

 private:
  QuotientMetric metric_;
  Subvariety y_;
  std::optional<Section> representative_;
  std::vector<Rational> values_;  // at normalized points (points only)
  Magnitude l_norm_;
};

struct Lift {
  Section section;   // s with s|_Y = l^n and minimal sup norm
  Magnitude sup;     // ||s||_{h^n}
  Magnitude ratio;   // ||s||_{h^n} / ||l||_{Y,h}^n, so a_n = log(ratio)
};

Lift min_norm_lift(const ExtensionProblem& problem, unsigned n);

struct DegreeRatios {
  /// ratios[n-1] for n = 1..N; nullopt when l^n does not extend.
  std::vector<std::optional<Magnitude>> ratios;
};

DegreeRatios extension_ratios(const ExtensionProblem& problem, unsigned max_degree);

struct SubadditivityViolation {
  unsigned m, n;
  Magnitude a_m, a_n, a_mn;
};

/// All (m, n) with m <= n, m + n <= N and r_{m+n} > r_m r_n. Should be empty.
std::vector<SubadditivityViolation> subadditivity_check(const DegreeRatios& table);

struct LambdaEstimate {
  DegreeRatios table;
  /// After degree n: the (ratio, degree) minimizing ratio^(1/degree) so far.
  std::vector<std::optional<std::pair<Magnitude, unsigned>>> running_inf;
};

LambdaEstimate lambda_estimate(const ExtensionProblem& problem, unsigned max_degree);
LambdaEstimate lambda_estimate(DegreeRatios table);

struct LaurentLift {
  Section section;
  unsigned long base_prime;
  Magnitude ratio;
  std::vector<Rational> retained;  // coefficients a_1..a_t, checked T-free
};

/// Trivial valuation only: minimize over Q((T)) with |T| = 1/P and project
/// back along an orthogonal basis adapted to the restriction kernel.
LaurentLift extend_trivial_via_laurent(const ExtensionProblem& problem, unsigned n);

struct ExtensionTheoremReport {
  std::vector<std::optional<bool>> holds;  // ratio_n <= exp(n eps), n = 1..N
  std::optional<unsigned> n0;              // smallest n0 with holds on [n0, N]
};

/// eps >= 0. exp(n eps) is compared with the exact ratio through certified
/// logarithm enclosures.
ExtensionTheoremReport check_extension_theorem(const DegreeRatios& table, const Rational& epsilon);

/// log(r) <= t for r > 0 rational, t rational; exact decision.
bool log_at_most(const Rational& r, const Rational& t);

}  // namespace ultranorm
