#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "lcah/errors.hpp"

namespace lcah {

// Dense row-major matrix over a ring-like value type.
template <class T> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>> &rows,
                          std::size_t cols_if_empty = 0) {
    Matrix m(rows.size(), rows.empty() ? cols_if_empty : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_)
        fail(ErrorKind::ShapeMismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j)
        m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool operator==(const Matrix &o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  bool is_zero() const {
    for (const auto &x : data_)
      if (!(x == T(0)))
        return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix &o) const {
    if (cols_ != o.rows_)
      fail(ErrorKind::ShapeMismatch, "matrix product shape mismatch");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T &a = (*this)(i, k);
        if (a == T(0))
          continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r(i, j) += a * o(k, j);
      }
    return r;
  }

  Matrix operator+(const Matrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      fail(ErrorKind::ShapeMismatch, "matrix sum shape mismatch");
    Matrix r = *this;
    for (std::size_t k = 0; k < data_.size(); ++k)
      r.data_[k] += o.data_[k];
    return r;
  }

  Matrix operator-() const {
    Matrix r = *this;
    for (auto &x : r.data_)
      x = -x;
    return r;
  }

  Matrix operator-(const Matrix &o) const { return *this + (-o); }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr,
               std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j)
        b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix &b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix column(std::size_t j) const { return block(0, j, rows_, 1); }

  Matrix select_columns(const std::vector<std::size_t> &cols) const {
    Matrix r(rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols.size(); ++k)
        r(i, k) = (*this)(i, cols[k]);
    return r;
  }

  static Matrix hstack(const Matrix &a, const Matrix &b) {
    if (a.rows_ != b.rows_)
      fail(ErrorKind::ShapeMismatch, "hstack row mismatch");
    Matrix r(a.rows_, a.cols_ + b.cols_);
    r.set_block(0, 0, a);
    r.set_block(0, a.cols_, b);
    return r;
  }

  static Matrix vstack(const Matrix &a, const Matrix &b) {
    if (a.cols_ != b.cols_)
      fail(ErrorKind::ShapeMismatch, "vstack column mismatch");
    Matrix r(a.rows_ + b.rows_, a.cols_);
    r.set_block(0, 0, a);
    r.set_block(a.rows_, 0, b);
    return r;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t i = 0; i < rows_; ++i)
      std::swap((*this)(i, a), (*this)(i, b));
  }

  // row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const T &k) {
    for (std::size_t j = 0; j < cols_; ++j)
      (*this)(dst, j) += k * (*this)(src, j);
  }

  // col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, const T &k) {
    for (std::size_t i = 0; i < rows_; ++i)
      (*this)(i, dst) += k * (*this)(i, src);
  }

  template <class F> auto map(F f) const {
    using U = decltype(f(std::declval<const T &>()));
    Matrix<U> r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        r(i, j) = f((*this)(i, j));
    return r;
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

} // namespace lcah
