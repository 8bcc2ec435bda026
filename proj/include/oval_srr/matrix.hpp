#pragma once

// Small dense matrices over GF(q). Row-major, sized at runtime.

#include <optional>
#include <vector>

#include "geom.hpp"

namespace oval {

class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& f, std::size_t rows, std::size_t cols)
      : field_(&f), rows_(rows), cols_(cols), a_(rows * cols, f.zero()) {}

  static Matrix identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }

  /// Columns given as 3-vectors.
  static Matrix from_columns(const Field& f, const std::vector<Vec3>& cols) {
    Matrix m(f, 3, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < 3; ++i) m(i, j) = cols[j][i];
    return m;
  }

  static Matrix from_reps(const Field& f, const std::vector<std::vector<std::uint32_t>>& rows) {
    Matrix m(f, rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw Error(Errc::DimensionMismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = f.element(rows[i][j]);
    }
    return m;
  }

  const Field& field() const { return *field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  FieldElement& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const FieldElement& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vec3 column3(std::size_t j) const {
    if (rows_ != 3) throw Error(Errc::DimensionMismatch, "column3 on a matrix without 3 rows");
    return {(*this)(0, j), (*this)(1, j), (*this)(2, j)};
  }

  std::vector<std::vector<std::uint32_t>> reps() const {
    std::vector<std::vector<std::uint32_t>> out(rows_, std::vector<std::uint32_t>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j).rep();
    return out;
  }

  Matrix select_columns(const std::vector<std::size_t>& idx) const {
    Matrix m(*field_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) m(i, k) = (*this)(i, idx[k]);
    return m;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.field_ != y.field_) throw Error(Errc::FieldMismatch, "matrix product across fields");
    if (x.cols_ != y.rows_) throw Error(Errc::DimensionMismatch, "matrix product shape mismatch");
    Matrix r(*x.field_, x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const FieldElement xik = x(i, k);
        if (xik.is_zero()) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += xik * y(k, j);
      }
    return r;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.field_ == y.field_ && x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  std::size_t rank() const {
    Matrix m = *this;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t piv = r;
      while (piv < rows_ && m(piv, c).is_zero()) ++piv;
      if (piv == rows_) continue;
      m.swap_rows(piv, r);
      const FieldElement s = m(r, c).inv();
      for (std::size_t i = r + 1; i < rows_; ++i) {
        if (m(i, c).is_zero()) continue;
        const FieldElement f = m(i, c) * s;
        for (std::size_t j = c; j < cols_; ++j) m(i, j) -= f * m(r, j);
      }
      ++r;
    }
    return r;
  }

  /// Gauss-Jordan inverse; nullopt when singular.
  std::optional<Matrix> inverse() const {
    if (rows_ != cols_) throw Error(Errc::DimensionMismatch, "inverse of a non-square matrix");
    const std::size_t n = rows_;
    Matrix m = *this, inv = identity(*field_, n);
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      while (piv < n && m(piv, c).is_zero()) ++piv;
      if (piv == n) return std::nullopt;
      m.swap_rows(piv, c);
      inv.swap_rows(piv, c);
      const FieldElement s = m(c, c).inv();
      for (std::size_t j = 0; j < n; ++j) {
        m(c, j) *= s;
        inv(c, j) *= s;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (i == c || m(i, c).is_zero()) continue;
        const FieldElement f = m(i, c);
        for (std::size_t j = 0; j < n; ++j) {
          m(i, j) -= f * m(c, j);
          inv(i, j) -= f * inv(c, j);
        }
      }
    }
    return inv;
  }

 private:
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  const Field* field_ = nullptr;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<FieldElement> a_;
};

/// True iff the columns selected by idx, together with target, have the same
/// rank as the columns alone, i.e. target lies in their span.
inline bool in_column_span(const Matrix& m, const std::vector<std::size_t>& idx, const Vec3& target) {
  Matrix sel = m.select_columns(idx);
  Matrix aug(m.field(), 3, idx.size() + 1);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < idx.size(); ++k) aug(i, k) = sel(i, k);
    aug(i, idx.size()) = target[i];
  }
  return aug.rank() == sel.rank();
}

inline Vec3 unit_vector(const Field& f, std::size_t i) {
  Vec3 e{f.zero(), f.zero(), f.zero()};
  e[i] = f.one();
  return e;
}

}  // namespace oval
