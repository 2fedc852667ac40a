#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hermiwitt/errors.hpp"

namespace hermiwitt {

// Dense row-major matrix over a (possibly noncommutative) coefficient type.
// T must provide zero_like/one_like/pivot_weight/inverse via ADL.
template <class T>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& like) {
    Matrix m(n, n, zero_like(like));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one_like(like);
    return m;
  }
  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(d.size(), d.size(), zero_like(d.at(0)));
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const T& any() const { return data_.at(0); }

  Matrix column(std::size_t j) const {
    Matrix c(rows_, 1, data_.at(0));
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
  }
  void set_column(std::size_t j, const Matrix& c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c(i, 0);
  }
  Matrix transpose() const {
    Matrix t(cols_, rows_, data_.at(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator+(const Matrix& o) const {
    check_same(o);
    Matrix r = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + o.data_[k];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_same(o);
    Matrix r = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - o.data_[k];
    return r;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }
  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw InvalidParameter("matrix shape mismatch in product");
    Matrix r(rows_, o.cols_, zero_like(data_.at(0)));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < o.cols_; ++j) {
        T acc = (*this)(i, 0) * o(0, j);
        for (std::size_t k = 1; k < cols_; ++k) acc = acc + (*this)(i, k) * o(k, j);
        r(i, j) = acc;
      }
    return r;
  }
  // entrywise x * s and s * x
  template <class S>
  Matrix right_scale(const S& s) const {
    Matrix r = *this;
    for (auto& x : r.data_) x = x * s;
    return r;
  }
  template <class S>
  Matrix left_scale(const S& s) const {
    Matrix r = *this;
    for (auto& x : r.data_) x = s * x;
    return r;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }
  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && (*this - o).is_zero(); }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidParameter("matrix shape mismatch");
  }
  std::size_t rows_, cols_;
  std::vector<T> data_;
};

// Gauss-Jordan over a division ring, pivoting on the smallest valuation.
// Only left multiplications by pivot inverses are used, so this is valid for
// noncommutative T as well.
template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw InvalidParameter("inverse of a non-square matrix");
  Matrix<T> m = a;
  Matrix<T> inv = Matrix<T>::identity(n, a.any());
  for (std::size_t col = 0; col < n; ++col) {
    std::optional<std::size_t> piv;
    int best = 0;
    for (std::size_t r = col; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      int w = pivot_weight(m(r, col));
      if (!piv || w < best) {
        piv = r;
        best = w;
      }
    }
    if (!piv) throw Singular("no pivot in column " + std::to_string(col));
    if (*piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(col, j), m(*piv, j));
        std::swap(inv(col, j), inv(*piv, j));
      }
    T pinv = inverse(m(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      m(col, j) = pinv * m(col, j);
      inv(col, j) = pinv * inv(col, j);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m(r, col).is_zero()) continue;
      T f = m(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) = m(r, j) - f * m(col, j);
        inv(r, j) = inv(r, j) - f * inv(col, j);
      }
    }
  }
  return inv;
}

// Determinant for commutative T.
template <class T>
T determinant(const Matrix<T>& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw InvalidParameter("determinant of a non-square matrix");
  Matrix<T> m = a;
  T det = one_like(a.any());
  for (std::size_t col = 0; col < n; ++col) {
    std::optional<std::size_t> piv;
    int best = 0;
    for (std::size_t r = col; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      int w = pivot_weight(m(r, col));
      if (!piv || w < best) {
        piv = r;
        best = w;
      }
    }
    if (!piv) return zero_like(a.any());
    if (*piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(col, j), m(*piv, j));
      det = -det;
    }
    det = det * m(col, col);
    T pinv = inverse(m(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      T f = m(r, col) * pinv;
      for (std::size_t j = col; j < n; ++j) m(r, j) = m(r, j) - f * m(col, j);
    }
  }
  return det;
}

// Row echelon data for commutative T: rank and a basis of the right kernel.
template <class T>
struct Echelon {
  std::size_t rank = 0;
  std::vector<std::vector<T>> kernel;
};

template <class T>
Echelon<T> echelon(const Matrix<T>& a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  Matrix<T> m = a;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::optional<std::size_t> piv;
    int best = 0;
    for (std::size_t i = r; i < rows; ++i) {
      if (m(i, c).is_zero()) continue;
      int w = pivot_weight(m(i, c));
      if (!piv || w < best) {
        piv = i;
        best = w;
      }
    }
    if (!piv) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(*piv, j));
    T pinv = inverse(m(r, c));
    for (std::size_t j = 0; j < cols; ++j) m(r, j) = pinv * m(r, j);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      T f = m(i, c);
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  Echelon<T> out;
  out.rank = r;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(cols, zero_like(a.any()));
    v[free] = one_like(a.any());
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -m(k, free);
    out.kernel.push_back(std::move(v));
  }
  return out;
}

}  // namespace hermiwitt
