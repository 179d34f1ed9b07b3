#pragma once

// Small dense matrices over an arbitrary commutative ring R (field elements,
// series, Kummer elements). Only +, -, * and copies are required of R for
// the division-free routines; det_gauss also needs inv() and is_zero().

#include <cstddef>
#include <vector>

#include "valdiv/errors.hpp"

namespace valdiv {

template <class R>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, const R& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const R& zero, const R& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  R& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const R& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix shape mismatch");
    Matrix r(a.rows_, b.cols_, a.data_.empty() ? b.data_.front() : a.data_.front());
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < b.cols_; ++j) {
        R acc = a(i, 0) * b(0, j);
        for (std::size_t k = 1; k < a.cols_; ++k) acc = acc + a(i, k) * b(k, j);
        r(i, j) = acc;
      }
    }
    return r;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix shape mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] = a.data_[k] + b.data_[k];
    return a;
  }

  friend Matrix operator*(const R& s, Matrix a) {
    for (auto& x : a.data_) x = s * x;
    return a;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<R> data_;
};

/// Coefficients of det(X*I - A), low degree first (monic, length n+1).
/// Berkowitz's division-free algorithm.
template <class R>
std::vector<R> charpoly(const Matrix<R>& a, const R& zero, const R& one) {
  if (a.rows() != a.cols()) throw DomainError("characteristic polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  // High degree first while iterating.
  std::vector<R> vect{one};
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<R> q;
    q.reserve(r + 2);
    q.push_back(one);
    q.push_back(zero - a(r, r));
    // w = M^k C with M the leading r x r block and C the column above a(r, r).
    std::vector<R> w(r, zero);
    for (std::size_t i = 0; i < r; ++i) w[i] = a(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      R s = zero;
      for (std::size_t i = 0; i < r; ++i) s = s + a(r, i) * w[i];
      q.push_back(zero - s);
      if (k + 1 < r) {
        std::vector<R> nw(r, zero);
        for (std::size_t i = 0; i < r; ++i) {
          R acc = zero;
          for (std::size_t j = 0; j < r; ++j) acc = acc + a(i, j) * w[j];
          nw[i] = acc;
        }
        w = std::move(nw);
      }
    }
    std::vector<R> next(r + 2, zero);
    for (std::size_t i = 0; i < r + 2; ++i) {
      for (std::size_t j = 0; j <= std::min(i, r); ++j) {
        if (j < vect.size()) next[i] = next[i] + q[i - j] * vect[j];
      }
    }
    vect = std::move(next);
  }
  return std::vector<R>(vect.rbegin(), vect.rend());
}

template <class R>
R det_berkowitz(const Matrix<R>& a, const R& zero, const R& one) {
  std::vector<R> p = charpoly(a, zero, one);
  return a.rows() % 2 == 0 ? p[0] : zero - p[0];
}

/// Gaussian elimination; R must be a field type.
template <class R>
R det_gauss(Matrix<R> a, const R& zero, const R& one) {
  if (a.rows() != a.cols()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  R det = one;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return zero;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = zero - det;
    }
    det = det * a(c, c);
    const R inv = a(c, c).inv();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      const R f = a(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) a(i, j) = a(i, j) - f * a(c, j);
    }
  }
  return det;
}

}  // namespace valdiv
