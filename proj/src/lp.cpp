#include "ultranorm/lp.hpp"

#include "ultranorm/errors.hpp"

namespace ultranorm {

namespace {

/// Dense tableau: rows 0..m-1 constraints (last column rhs), basis[i] the basic column of row i.
struct Tableau {
  std::size_t rows, cols;  // cols excludes the rhs column
  std::vector<Vector<Rational>> t;
  std::vector<std::size_t> basis;

  Rational& rhs(std::size_t i) { return t[i][cols]; }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / t[r][c];
    for (auto& x : t[r])
      if (!is_zero(x)) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(t[i][c])) continue;
      Rational f = t[i][c];
      for (std::size_t j = 0; j <= cols; ++j)
        if (!is_zero(t[r][j])) t[i][j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  /// Minimizes cost.x over columns allowed[j]; Bland's rule. Returns false if unbounded.
  bool run(const Vector<Rational>& cost, const std::vector<bool>& allowed) {
    for (;;) {
      // reduced cost r_j = c_j - sum_i c_{basis[i]} t[i][j]
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols && enter == cols; ++j) {
        if (!allowed[j]) continue;
        Rational red = cost[j];
        for (std::size_t i = 0; i < rows; ++i)
          if (!is_zero(t[i][j]) && !is_zero(cost[basis[i]])) red -= cost[basis[i]] * t[i][j];
        if (sgn(red) < 0) enter = j;
      }
      if (enter == cols) return true;
      std::size_t leave = rows;
      Rational best;
      for (std::size_t i = 0; i < rows; ++i) {
        if (sgn(t[i][enter]) <= 0) continue;
        Rational ratio = t[i][cols] / t[i][enter];
        if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_standard_lp(const Matrix<Rational>& a, const Vector<Rational>& b, const Vector<Rational>& c) {
  const std::size_t m = a.rows(), n = a.cols();
  if (b.size() != m || c.size() != n) fail("dimension_mismatch", "linear program shapes disagree");
  // Phase 1 with one artificial per row (columns n..n+m-1).
  Tableau tab{m, n + m, std::vector<Vector<Rational>>(m, Vector<Rational>(n + m + 1, Rational(0))), {}};
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = sgn(b[i]) < 0;
    for (std::size_t j = 0; j < n; ++j) tab.t[i][j] = flip ? Rational(-a(i, j)) : a(i, j);
    tab.t[i][n + i] = 1;
    tab.t[i][n + m] = flip ? Rational(-b[i]) : b[i];
    tab.basis.push_back(n + i);
  }
  Vector<Rational> phase1(n + m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = 1;
  tab.run(phase1, std::vector<bool>(n + m, true));
  Rational infeas = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basis[i] >= n) infeas += tab.rhs(i);
  if (sgn(infeas) != 0) return {LpStatus::infeasible, 0, {}};
  // Drive zero-level artificials out of the basis; drop redundant rows.
  for (std::size_t i = 0; i < tab.rows;) {
    if (tab.basis[i] < n) {
      ++i;
      continue;
    }
    std::size_t col = n;
    for (std::size_t j = 0; j < n && col == n; ++j)
      if (!is_zero(tab.t[i][j])) col = j;
    if (col < n) {
      tab.pivot(i, col);
      ++i;
    } else {
      tab.t.erase(tab.t.begin() + static_cast<std::ptrdiff_t>(i));
      tab.basis.erase(tab.basis.begin() + static_cast<std::ptrdiff_t>(i));
      --tab.rows;
    }
  }
  Vector<Rational> cost(n + m, Rational(0));
  for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
  std::vector<bool> allowed(n + m, false);
  for (std::size_t j = 0; j < n; ++j) allowed[j] = true;
  if (!tab.run(cost, allowed)) return {LpStatus::unbounded, 0, {}};
  LpResult out{LpStatus::optimal, 0, Vector<Rational>(n, Rational(0))};
  for (std::size_t i = 0; i < tab.rows; ++i)
    if (tab.basis[i] < n) out.x[tab.basis[i]] = tab.rhs(i);
  for (std::size_t j = 0; j < n; ++j) out.value += c[j] * out.x[j];
  return out;
}

LpResult minimize(const Vector<Rational>& d, const Matrix<Rational>& g, const Vector<Rational>& h,
                  const Matrix<Rational>& e, const Vector<Rational>& f) {
  const std::size_t nz = d.size(), ni = g.rows(), ne = e.rows();
  if ((ni && g.cols() != nz) || (ne && e.cols() != nz) || h.size() != ni || f.size() != ne)
    fail("dimension_mismatch", "linear program shapes disagree");
  // Variables: z+ (nz), z- (nz), slacks (ni).
  const std::size_t n = 2 * nz + ni;
  Matrix<Rational> a(ni + ne, n);
  Vector<Rational> b(ni + ne), c(n, Rational(0));
  for (std::size_t i = 0; i < ni; ++i) {
    for (std::size_t j = 0; j < nz; ++j) {
      a(i, j) = g(i, j);
      a(i, nz + j) = -g(i, j);
    }
    a(i, 2 * nz + i) = 1;
    b[i] = h[i];
  }
  for (std::size_t i = 0; i < ne; ++i) {
    for (std::size_t j = 0; j < nz; ++j) {
      a(ni + i, j) = e(i, j);
      a(ni + i, nz + j) = -e(i, j);
    }
    b[ni + i] = f[i];
  }
  for (std::size_t j = 0; j < nz; ++j) {
    c[j] = d[j];
    c[nz + j] = -d[j];
  }
  LpResult r = solve_standard_lp(a, b, c);
  if (r.status != LpStatus::optimal) return r;
  Vector<Rational> z(nz);
  for (std::size_t j = 0; j < nz; ++j) z[j] = r.x[j] - r.x[nz + j];
  return {LpStatus::optimal, r.value, std::move(z)};
}

}  // namespace ultranorm
