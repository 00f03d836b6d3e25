#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ultranorm/errors.hpp"
#include "ultranorm/ratfunc.hpp"
#include "ultranorm/rational.hpp"

namespace ultranorm {

template <class K>
using Vector = std::vector<K>;

template <class K>
bool is_zero_vector(std::span<const K> v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

/// Dense row-major matrix over an exact field K (Rational or RatFunc).
template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, K(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = K(1);
    return m;
  }
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(std::span<const Vector<K>> cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) fail("dimension_mismatch", "column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }
  static Matrix from_columns(std::initializer_list<Vector<K>> cols, std::size_t rows) {
    return from_columns(std::span<const Vector<K>>(cols.begin(), cols.size()), rows);
  }
  static Matrix from_rows(std::initializer_list<Vector<K>> rows, std::size_t cols) {
    return from_rows(std::span<const Vector<K>>(rows.begin(), rows.size()), cols);
  }
  static Matrix from_rows(std::span<const Vector<K>> rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) fail("dimension_mismatch", "row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector<K> column(std::size_t j) const {
    Vector<K> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Vector<K> row(std::size_t i) const {
    return Vector<K>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<Vector<K>> columns() const {
    std::vector<Vector<K>> out;
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i != j && !is_zero((*this)(i, j))) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<K> data_;
};

template <class K>
Vector<K> operator*(const Matrix<K>& a, std::span<const K> v) {
  if (v.size() != a.cols()) fail("dimension_mismatch", "matrix-vector size mismatch");
  Vector<K> out(a.rows(), K(0));
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (is_zero(v[j])) continue;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (!is_zero(a(i, j))) out[i] += a(i, j) * v[j];
  }
  return out;
}

template <class K>
Vector<K> operator*(const Matrix<K>& a, const Vector<K>& v) {
  return a * std::span<const K>(v);
}

template <class K>
Matrix<K> operator*(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.cols() != b.rows()) fail("dimension_mismatch", "matrix product size mismatch");
  Matrix<K> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!is_zero(b(k, j))) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <class K>
struct RowEchelon {
  Matrix<K> reduced;                  // reduced row echelon form
  std::vector<std::size_t> pivots;    // pivot column of each nonzero row
};

/// Gauss-Jordan elimination to reduced row echelon form.
template <class K>
RowEchelon<K> rref(Matrix<K> a) {
  RowEchelon<K> out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && is_zero(a(piv, c))) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    K inv = K(1) / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j)
      if (!is_zero(a(r, j))) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      K f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (!is_zero(a(r, j))) a(i, j) -= f * a(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(a);
  return out;
}

template <class K>
std::size_t rank(const Matrix<K>& a) {
  return rref(a).pivots.size();
}

/// Basis of {x : a x = 0}, one vector per free column, in increasing free-column order.
template <class K>
std::vector<Vector<K>> kernel_basis(const Matrix<K>& a) {
  auto [r, pivots] = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector<K>> out;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector<K> v(a.cols(), K(0));
    v[f] = K(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, f);
    out.push_back(std::move(v));
  }
  return out;
}

/// Some x with a x = b, or nullopt when inconsistent.
template <class K>
std::optional<Vector<K>> solve(const Matrix<K>& a, std::span<const K> b) {
  if (b.size() != a.rows()) fail("dimension_mismatch", "right-hand side size mismatch");
  Matrix<K> aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto [r, pivots] = rref(std::move(aug));
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  Vector<K> x(a.cols(), K(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = r(i, a.cols());
  return x;
}

template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& a) {
  if (a.rows() != a.cols()) fail("dimension_mismatch", "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix<K> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = K(1);
  }
  auto [r, pivots] = rref(std::move(aug));
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix<K> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  return inv;
}

template <class K>
K determinant(Matrix<K> a) {
  if (a.rows() != a.cols()) fail("dimension_mismatch", "determinant of a non-square matrix");
  const std::size_t n = a.rows();
  K det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && is_zero(a(piv, c))) ++piv;
    if (piv == n) return K(0);
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(a(i, c))) continue;
      K f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

/// Lifts a rational vector into Q(T).
inline Vector<RatFunc> to_ratfunc(std::span<const Rational> v) {
  return Vector<RatFunc>(v.begin(), v.end());
}
inline Matrix<RatFunc> to_ratfunc(const Matrix<Rational>& a) {
  Matrix<RatFunc> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = RatFunc(a(i, j));
  return out;
}

}  // namespace ultranorm
