#pragma once

// Dense linear algebra over a small finite field: row reduction, rank, null
// spaces. Matrices are row-major and tiny (a few dozen rows and columns), so
// everything is plain Gaussian elimination.

#include <cstddef>
#include <span>
#include <vector>

#include "lincx/gf.hpp"

namespace lincx {

using Vec = std::vector<Scalar>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  Scalar operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  std::span<Scalar> row(std::size_t r) { return {a_.data() + r * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t r) const { return {a_.data() + r * cols_, cols_}; }

  void append_row(std::span<const Scalar> v) {
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    a_.insert(a_.end(), v.begin(), v.end());
    ++rows_;
  }

  // Keep only the first n rows.
  void truncate(std::size_t n) {
    rows_ = n;
    a_.resize(rows_ * cols_);
  }

  const std::vector<Scalar>& data() const { return a_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

inline bool is_zero(std::span<const Scalar> v) {
  for (Scalar x : v)
    if (x != 0) return false;
  return true;
}

// dst += c * src
inline void axpy(const Field& f, Scalar c, std::span<const Scalar> src, std::span<Scalar> dst) {
  if (c == 0) return;
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = f.add(dst[i], f.mul(c, src[i]));
}

inline Scalar dot(const Field& f, std::span<const Scalar> a, std::span<const Scalar> b) {
  Scalar s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

// Scales v so that its first nonzero entry is 1. Returns false for v = 0.
inline bool normalize(const Field& f, std::span<Scalar> v) {
  for (Scalar x : v) {
    if (x == 0) continue;
    const Scalar s = f.inv(x);
    for (Scalar& y : v) y = f.mul(y, s);
    return true;
  }
  return false;
}

// Reduced row-echelon form in place; zero rows are dropped. Returns the pivot
// column of every surviving row.
inline std::vector<std::size_t> rref(const Field& f, Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && m(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
    const Scalar s = f.inv(m(r, c));
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), s);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      axpy(f, f.neg(m(i, c)), m.row(r), m.row(i));
    }
    pivots.push_back(c);
    ++r;
  }
  m.truncate(r);
  return pivots;
}

inline std::size_t rank(const Field& f, Matrix m) { return rref(f, m).size(); }

// Basis of {x : m x = 0}, one vector per free column, in RREF-compatible order.
inline std::vector<Vec> nullspace(const Field& f, Matrix m) {
  const auto pivots = rref(f, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec x(m.cols(), 0);
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = f.neg(m(r, free));
    basis.push_back(std::move(x));
  }
  return basis;
}

// Determinant of a square matrix.
inline Scalar determinant(const Field& f, Matrix m) {
  const std::size_t n = m.rows();
  Scalar det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && m(sel, c) == 0) ++sel;
    if (sel == n) return 0;
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(c, j));
      det = f.neg(det);
    }
    det = f.mul(det, m(c, c));
    const Scalar s = f.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      axpy(f, f.neg(f.mul(m(i, c), s)), m.row(c), m.row(i));
    }
  }
  return det;
}

}  // namespace lincx
