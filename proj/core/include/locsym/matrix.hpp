#pragma once

#include "locsym/error.hpp"
#include "locsym/rational.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

namespace locsym {

template <class T>
using Vec = std::vector<T>;

/// Dense row-major matrix over an exact or floating scalar.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static DenseMatrix zero(std::size_t n) { return DenseMatrix(n, n); }
  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  /// Matrix unit E_{ij} (0-based).
  static DenseMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
    DenseMatrix m(n, n);
    m(i, j) = T(1);
    return m;
  }
  static DenseMatrix diagonal(const Vec<T>& d) {
    DenseMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  static DenseMatrix from_rows(const std::vector<Vec<T>>& rows) {
    if (rows.empty()) return {};
    DenseMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw InputError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  /// Reshape a length n*n vector (row-major) into an n x n matrix.
  static DenseMatrix from_flat(std::size_t n, const Vec<T>& flat) {
    if (flat.size() != n * n) throw InputError("flat vector has wrong length");
    DenseMatrix m(n, n);
    m.data_ = flat;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const Vec<T>& flat() const { return data_; }
  Vec<T> row(std::size_t i) const { return Vec<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
  Vec<T> col(std::size_t j) const {
    Vec<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!(x == T(0))) return false;
    return true;
  }

  /// Entrywise image under f.
  template <class F>
  auto map(F&& f) const {
    DenseMatrix<std::decay_t<decltype(f(data_[0]))>> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  DenseMatrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(DenseMatrix a, const T& s) { return a *= s; }
  friend DenseMatrix operator*(const T& s, DenseMatrix a) { return a *= s; }
  friend DenseMatrix operator-(DenseMatrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product dimension mismatch");
    DenseMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Vec<T> operator*(const DenseMatrix& a, const Vec<T>& v) {
    if (a.cols_ != v.size()) throw InputError("matrix-vector dimension mismatch");
    Vec<T> r(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
    return r;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vec<T> data_;
};

using QMatrix = DenseMatrix<Rational>;
using CMatrix = DenseMatrix<Complex>;
using QVector = Vec<Rational>;
using CVector = Vec<Complex>;

inline CMatrix to_complex(const QMatrix& m) {
  CMatrix c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = Complex(m(i, j).get_d(), 0.0);
  return c;
}

inline CVector to_complex(const QVector& v) {
  CVector c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = Complex(v[i].get_d(), 0.0);
  return c;
}

/// Commutator XY - YX.
template <class T>
DenseMatrix<T> commutator(const DenseMatrix<T>& x, const DenseMatrix<T>& y) {
  if (!x.square() || x.rows() != y.rows() || !y.square()) throw InputError("bracket of operators of different dimension");
  return x * y - y * x;
}

/// Largest entry modulus.
inline double max_abs(const CMatrix& m) {
  double r = 0.0;
  for (const auto& z : m.flat()) r = std::max(r, std::abs(z));
  return r;
}

inline double max_abs(const CVector& v) {
  double r = 0.0;
  for (const auto& z : v) r = std::max(r, std::abs(z));
  return r;
}

/// Induced 1-norm (max column sum).
inline double norm1(const CMatrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += std::abs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

/// Standard basis vector e_i (0-based) over T.
template <class T>
Vec<T> basis_vector(std::size_t n, std::size_t i) {
  Vec<T> v(n, T(0));
  v.at(i) = T(1);
  return v;
}

}  // namespace locsym
