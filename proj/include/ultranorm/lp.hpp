#pragma once

#include <optional>

#include "ultranorm/matrix.hpp"

namespace ultranorm {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational value;       // optimal objective
  Vector<Rational> x;   // optimal point
};

/// min c.x subject to a x = b, x >= 0. Exact two-phase simplex with Bland's rule.
LpResult solve_standard_lp(const Matrix<Rational>& a, const Vector<Rational>& b, const Vector<Rational>& c);

/// min d.z over free z subject to g z <= h and e z = f (either block may be empty).
LpResult minimize(const Vector<Rational>& d, const Matrix<Rational>& g, const Vector<Rational>& h,
                  const Matrix<Rational>& e, const Vector<Rational>& f);

}  // namespace ultranorm
