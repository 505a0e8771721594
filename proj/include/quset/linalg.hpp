#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "quset/rational.hpp"

namespace quset {

struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Vector = std::vector<Rational>;

/// Dense rational matrix. Row count may be zero, so the column count is
/// stored explicitly; every stored row has exactly `cols` entries.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : cols_(cols), rows_(rows, Vector(cols, Rational(0))) {}
  explicit Matrix(std::vector<Vector> rows, std::size_t cols)
      : cols_(cols), rows_(std::move(rows)) {
    for (const auto& r : rows_)
      if (r.size() != cols_) throw DimensionError("ragged matrix");
  }
  Matrix(std::initializer_list<Vector> rows)
      : cols_(rows.size() ? rows.begin()->size() : 0), rows_(rows) {
    for (const auto& r : rows_)
      if (r.size() != cols_) throw DimensionError("ragged matrix");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i][i] = 1;
    return m;
  }

  std::size_t row_count() const { return rows_.size(); }
  std::size_t col_count() const { return cols_; }
  const Vector& row(std::size_t i) const { return rows_[i]; }
  Vector& row(std::size_t i) { return rows_[i]; }
  const Rational& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  Rational& at(std::size_t i, std::size_t j) { return rows_[i][j]; }
  const std::vector<Vector>& rows() const { return rows_; }

  void append_row(Vector v) {
    if (v.size() != cols_) throw DimensionError("row length mismatch");
    rows_.push_back(std::move(v));
  }

  bool is_zero() const {
    for (const auto& r : rows_)
      for (const auto& x : r)
        if (x != 0) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = rows_[i][j];
    return t;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<Vector> rows_;
};

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.col_count() != b.row_count()) throw DimensionError("matrix product shape");
  Matrix c(a.row_count(), b.col_count());
  for (std::size_t i = 0; i < a.row_count(); ++i)
    for (std::size_t k = 0; k < a.col_count(); ++k) {
      const Rational& aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.col_count(); ++j)
        c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.row_count() != b.row_count() || a.col_count() != b.col_count())
    throw DimensionError("matrix difference shape");
  Matrix c = a;
  for (std::size_t i = 0; i < a.row_count(); ++i)
    for (std::size_t j = 0; j < a.col_count(); ++j) c.at(i, j) -= b.at(i, j);
  return c;
}

inline Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.row_count() != b.row_count() || a.col_count() != b.col_count())
    throw DimensionError("matrix sum shape");
  Matrix c = a;
  for (std::size_t i = 0; i < a.row_count(); ++i)
    for (std::size_t j = 0; j < a.col_count(); ++j) c.at(i, j) += b.at(i, j);
  return c;
}

inline Vector operator*(const Matrix& a, const Vector& v) {
  if (a.col_count() != v.size()) throw DimensionError("matrix-vector shape");
  Vector out(a.row_count(), Rational(0));
  for (std::size_t i = 0; i < a.row_count(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a.at(i, j) * v[j];
  return out;
}

inline Rational dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionError("dot product length");
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero_vector(const Vector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

/// [A,B] = AB - BA.
inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

/// Gauss-Jordan reduction. Returns the reduced row-echelon form (same
/// shape, zero rows sunk to the bottom, pivots scaled to 1 with zeros
/// above and below) together with the pivot column indices. The row
/// space is preserved.
inline std::pair<Matrix, std::vector<std::size_t>> rref(Matrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.col_count() && r < m.row_count(); ++c) {
    std::size_t sel = r;
    while (sel < m.row_count() && m.at(sel, c) == 0) ++sel;
    if (sel == m.row_count()) continue;
    std::swap(m.row(sel), m.row(r));
    Rational inv = Rational(1) / m.at(r, c);
    for (std::size_t j = c; j < m.col_count(); ++j) m.at(r, j) *= inv;
    for (std::size_t i = 0; i < m.row_count(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rational f = m.at(i, c);
      for (std::size_t j = c; j < m.col_count(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

/// Basis of the null space of m; empty iff m is injective.
inline std::vector<Vector> kernel_basis(const Matrix& m) {
  auto [red, pivots] = rref(m);
  std::vector<bool> is_pivot(m.col_count(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.col_count(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.col_count(), Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -red.at(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Matrix matrix_from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  return Matrix(rows, cols);
}

/// Basis of {v | <v,s> = 0 for all s in span}, under the standard
/// bilinear form. The form is positive definite over the rationals, so
/// complementation behaves as in the real case.
inline std::vector<Vector> orthogonal_complement(const std::vector<Vector>& span,
                                                 std::size_t dim) {
  return kernel_basis(matrix_from_rows(span, dim));
}

/// Basis of span(A) /\ span(B), computed as the complement of the sum of
/// the two complements.
inline std::vector<Vector> intersect_spans(const std::vector<Vector>& a,
                                           const std::vector<Vector>& b,
                                           std::size_t dim) {
  auto ca = orthogonal_complement(a, dim);
  auto cb = orthogonal_complement(b, dim);
  for (auto& v : cb) ca.push_back(std::move(v));
  return orthogonal_complement(ca, dim);
}

/// Canonical form of a span: nonzero rows of its rref. Subspace equality
/// becomes syntactic equality of canonical bases.
inline std::vector<Vector> canonical_span(const std::vector<Vector>& span,
                                          std::size_t dim) {
  auto [red, pivots] = rref(matrix_from_rows(span, dim));
  std::vector<Vector> rows;
  rows.reserve(pivots.size());
  for (std::size_t i = 0; i < pivots.size(); ++i) rows.push_back(red.row(i));
  return rows;
}

/// Membership test against a canonical (rref) basis.
inline bool in_span(Vector v, const std::vector<Vector>& canonical_basis) {
  for (const auto& row : canonical_basis) {
    std::size_t p = 0;
    while (p < row.size() && row[p] == 0) ++p;
    if (p == row.size()) continue;
    if (v[p] == 0) continue;
    Rational f = v[p];
    for (std::size_t j = p; j < v.size(); ++j) v[j] -= f * row[j];
  }
  return is_zero_vector(v);
}

/// Inverse of a square rational matrix by Gauss-Jordan.
inline Matrix inverse(const Matrix& m) {
  const std::size_t n = m.row_count();
  if (n != m.col_count()) throw DimensionError("inverse of non-square matrix");
  Matrix work(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) work.at(i, j) = m.at(i, j);
    work.at(i, n + i) = 1;
  }
  auto [red, pivots] = rref(std::move(work));
  if (pivots.size() != n || pivots.back() != n - 1)
    throw std::runtime_error("singular matrix");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = red.at(i, n + j);
  return inv;
}

inline std::string to_string(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

}  // namespace quset
