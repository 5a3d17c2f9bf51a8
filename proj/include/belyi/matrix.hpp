#pragma once

#include <optional>
#include <vector>

#include "belyi/errors.hpp"

namespace belyi {

/// Row-major dense matrix over a field K. Keeps a zero element so that empty
/// and zero-sized matrices still know their field.
template <class K>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, const K& zero)
      : rows_(rows), cols_(cols), zero_(zero), a_(rows * cols, zero) {}
  Matrix(const std::vector<std::vector<K>>& rows, size_t cols, const K& zero)
      : rows_(rows.size()), cols_(cols), zero_(zero) {
    a_.reserve(rows_ * cols_);
    for (auto& r : rows) {
      ensure(r.size() == cols_, "ragged matrix rows");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }
  static Matrix identity(size_t n, const K& zero) {
    Matrix m(n, n, zero);
    for (size_t i = 0; i < n; ++i) m(i, i) = zero.one();
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const K& zero() const { return zero_; }
  K& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const K& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  std::vector<K> row(size_t i) const {
    return std::vector<K>(a_.begin() + static_cast<long>(i * cols_), a_.begin() + static_cast<long>((i + 1) * cols_));
  }
  void append_row(const std::vector<K>& r) {
    ensure(r.size() == cols_, "row length mismatch");
    a_.insert(a_.end(), r.begin(), r.end());
    ++rows_;
  }
  bool is_zero() const {
    for (auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_, zero_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    ensure(a.cols_ == b.rows_, "matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_, a.zero_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        const K& x = a(i, k);
        if (x.is_zero()) continue;
        for (size_t j = 0; j < b.cols_; ++j) c(i, j) = c(i, j) + x * b(k, j);
      }
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  std::vector<K> apply(const std::vector<K>& v) const {
    ensure(v.size() == cols_, "matrix-vector shape mismatch");
    std::vector<K> out(rows_, zero_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j)
        if (!v[j].is_zero() && !(*this)(i, j).is_zero()) out[i] = out[i] + (*this)(i, j) * v[j];
    return out;
  }

  /// Reduced row echelon form in place; returns the pivot columns.
  std::vector<size_t> rref_in_place() {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols_ && r < rows_; ++c) {
      size_t p = r;
      while (p < rows_ && (*this)(p, c).is_zero()) ++p;
      if (p == rows_) continue;
      if (p != r)
        for (size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
      K inv = (*this)(r, c).inverse();
      for (size_t j = c; j < cols_; ++j)
        if (!(*this)(r, j).is_zero()) (*this)(r, j) = (*this)(r, j) * inv;
      for (size_t i = 0; i < rows_; ++i) {
        if (i == r || (*this)(i, c).is_zero()) continue;
        K f = (*this)(i, c);
        for (size_t j = c; j < cols_; ++j)
          if (!(*this)(r, j).is_zero()) (*this)(i, j) = (*this)(i, j) - f * (*this)(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  Matrix rref() const {
    Matrix m = *this;
    m.rref_in_place();
    return m;
  }

  size_t rank() const {
    Matrix m = *this;
    return m.rref_in_place().size();
  }

  /// Nonzero rows of the RREF: the canonical basis of the row space.
  Matrix row_space() const {
    Matrix m = *this;
    size_t r = m.rref_in_place().size();
    Matrix out(0, cols_, zero_);
    for (size_t i = 0; i < r; ++i) out.append_row(m.row(i));
    return out;
  }

  /// Basis of {v : M v = 0} as rows, one per free column, in RREF order.
  Matrix kernel() const {
    Matrix m = *this;
    std::vector<size_t> piv = m.rref_in_place();
    std::vector<bool> is_piv(cols_, false);
    for (size_t c : piv) is_piv[c] = true;
    Matrix out(0, cols_, zero_);
    for (size_t f = 0; f < cols_; ++f) {
      if (is_piv[f]) continue;
      std::vector<K> v(cols_, zero_);
      v[f] = zero_.one();
      for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(i, f);
      out.append_row(v);
    }
    return out.row_space();
  }

  K det() const {
    ensure(rows_ == cols_, "determinant of a non-square matrix");
    Matrix m = *this;
    K d = zero_.one();
    for (size_t c = 0; c < cols_; ++c) {
      size_t p = c;
      while (p < rows_ && m(p, c).is_zero()) ++p;
      if (p == rows_) return zero_;
      if (p != c) {
        for (size_t j = 0; j < cols_; ++j) std::swap(m(p, j), m(c, j));
        d = -d;
      }
      d = d * m(c, c);
      K inv = m(c, c).inverse();
      for (size_t i = c + 1; i < rows_; ++i) {
        if (m(i, c).is_zero()) continue;
        K f = m(i, c) * inv;
        for (size_t j = c; j < cols_; ++j)
          if (!m(c, j).is_zero()) m(i, j) = m(i, j) - f * m(c, j);
      }
    }
    return d;
  }

  /// Inverse; throws MathError when singular.
  Matrix inverse() const {
    ensure(rows_ == cols_, "inverse of a non-square matrix");
    const size_t n = rows_;
    Matrix aug(n, 2 * n, zero_);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
      aug(i, n + i) = zero_.one();
    }
    auto piv = aug.rref_in_place();
    if (piv.size() < n || piv[n - 1] != n - 1) throw MathError("singular matrix");
    Matrix out(n, n, zero_);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
    return out;
  }

  /// Some solution x of M x = b, if one exists.
  std::optional<std::vector<K>> solve(const std::vector<K>& b) const {
    ensure(b.size() == rows_, "right-hand side length mismatch");
    Matrix aug(rows_, cols_ + 1, zero_);
    for (size_t i = 0; i < rows_; ++i) {
      for (size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_) = b[i];
    }
    auto piv = aug.rref_in_place();
    if (!piv.empty() && piv.back() == cols_) return std::nullopt;
    std::vector<K> x(cols_, zero_);
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, cols_);
    return x;
  }

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  K zero_{};
  std::vector<K> a_;
};

}  // namespace belyi
