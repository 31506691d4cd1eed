#pragma once

#include "eqhom/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace eqhom {

template <class R>
using Vector = std::vector<R>;

/// Integer chain vector; mod-2 chains are stored with entries in {0, 1}.
using ChainVector = Vector<Integer>;

/**
 * Dense row-major matrix over an exact ring.
 *
 * Zero-row and zero-column shapes are legal and behave as the zero map
 * between the corresponding free modules.
 */
template <class R>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = R(1);
    return m;
  }

  static Matrix from_columns(std::size_t rows, const std::vector<Vector<R>>& columns) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw std::invalid_argument("Matrix::from_columns: column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  static Matrix from_rows(const std::vector<Vector<R>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("Matrix::from_rows: row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  R& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const R& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const R& x) { return RingTraits<R>::is_zero(x); });
  }

  Vector<R> column(std::size_t j) const {
    Vector<R> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Vector<R> row(std::size_t i) const { return Vector<R>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Rows [r0, r0+nr) and columns [c0, c0+nc).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  /// Writes `b` with its top-left corner at (r0, c0).
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Vector<R> apply(const Vector<R>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("Matrix::apply: dimension mismatch");
    Vector<R> y(rows_);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (RingTraits<R>::is_zero(x[j])) continue;
      for (std::size_t i = 0; i < rows_; ++i) {
        const R& a = (*this)(i, j);
        if (!RingTraits<R>::is_zero(a)) y[i] += a * x[j];
      }
    }
    return y;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix product: dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const R& aik = a(i, k);
        if (RingTraits<R>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const R& bkj = b(k, j);
          if (!RingTraits<R>::is_zero(bkj)) c(i, j) += aik * bkj;
        }
      }
    return c;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("Matrix sum: dimension mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("Matrix difference: dimension mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }

  Matrix scaled(const R& c) const {
    Matrix m = *this;
    for (auto& x : m.data_) x *= c;
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  // Elementary operations used by the normal-form routines.

  /// row_i += c * row_j
  void add_row_multiple(std::size_t i, std::size_t j, const R& c) {
    R* ri = &data_[i * cols_];
    const R* rj = &data_[j * cols_];
    for (std::size_t k = 0; k < cols_; ++k)
      if (!RingTraits<R>::is_zero(rj[k])) ri[k] += c * rj[k];
  }

  /// col_j += c * col_i
  void add_column_multiple(std::size_t j, std::size_t i, const R& c) {
    for (std::size_t k = 0; k < rows_; ++k) {
      const R& src = (*this)(k, i);
      if (!RingTraits<R>::is_zero(src)) (*this)(k, j) += c * src;
    }
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap_ranges(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_, data_.begin() + j * cols_);
  }

  void swap_columns(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
  }

  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) data_[i * cols_ + k] = -data_[i * cols_ + k];
  }

  void negate_column(std::size_t j) {
    for (std::size_t k = 0; k < rows_; ++k) (*this)(k, j) = -(*this)(k, j);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<R> data_;
};

template <class R>
std::ostream& operator<<(std::ostream& os, const Matrix<R>& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

using IntMatrix = Matrix<Integer>;
using Mod2Matrix = Matrix<Mod2>;

template <class To, class From>
Matrix<To> convert(const Matrix<From>& m) {
  Matrix<To> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(i, j) = RingTraits<To>::from_integer(RingTraits<From>::to_integer(m(i, j)));
  return out;
}

template <class To, class From>
Vector<To> convert(const Vector<From>& v) {
  Vector<To> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = RingTraits<To>::from_integer(RingTraits<From>::to_integer(v[i]));
  return out;
}

template <class R>
bool is_zero_vector(const Vector<R>& v) {
  return std::all_of(v.begin(), v.end(), [](const R& x) { return RingTraits<R>::is_zero(x); });
}

/// Reduces every entry into {0, 1}.
inline ChainVector reduce_mod2(ChainVector v) {
  for (auto& x : v) x = mod_floor(x, 2);
  return v;
}

inline IntMatrix reduce_mod2(IntMatrix m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = mod_floor(m(i, j), 2);
  return m;
}

/// Horizontal concatenation [a | b].
template <class R>
Matrix<R> hstack(const Matrix<R>& a, const Matrix<R>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  Matrix<R> m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

}  // namespace eqhom
