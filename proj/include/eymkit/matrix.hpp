#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "eymkit/error.hpp"
#include "eymkit/ratfunc.hpp"

namespace eymkit {

// Dense row-major matrix over an exact field (Rational or RatFunc).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c, T(0)) {}
  Matrix(std::size_t r, std::size_t c, std::vector<T> entries) : r_(r), c_(c), a_(std::move(entries)) {
    if (a_.size() != r * c) throw Error(ErrorKind::BadArgument, "matrix entry count mismatch");
  }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
  const std::vector<T>& entries() const { return a_; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!eymkit::is_zero(x)) return false;
    return true;
  }
  bool is_square() const { return r_ == c_; }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  Matrix operator-() const {
    Matrix m = *this;
    for (auto& x : m.a_) x = -x;
    return m;
  }
  friend Matrix operator*(const T& s, Matrix m) {
    if (!eymkit::is_zero(s))
      for (auto& x : m.a_) x = s * x;
    else
      m = Matrix(m.r_, m.c_);
    return m;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw Error(ErrorKind::BadArgument, "matrix product dimension mismatch");
    Matrix m(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const T& x = a(i, k);
        if (eymkit::is_zero(x)) continue;
        for (std::size_t j = 0; j < b.c_; ++j)
          if (!eymkit::is_zero(b(k, j))) m(i, j) += x * b(k, j);
      }
    return m;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

  T trace() const {
    T s(0);
    for (std::size_t i = 0; i < std::min(r_, c_); ++i) s += (*this)(i, i);
    return s;
  }

  template <class F>
  auto map(F f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    Matrix<decltype(f(std::declval<const T&>()))> m(r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(i, j) = f((*this)(i, j));
    return m;
  }

 private:
  void check_same(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw Error(ErrorKind::BadArgument, "matrix shape mismatch");
  }
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using FieldMatrix = Matrix<RatFunc>;
using QMatrix = Matrix<Rational>;

inline FieldMatrix commutator(const FieldMatrix& x, const FieldMatrix& y) { return x * y - y * x; }
inline QMatrix commutator(const QMatrix& x, const QMatrix& y) { return x * y - y * x; }

// Evaluates every entry at the assignment.
QMatrix eval(const FieldMatrix& m, const Assignment& at);
FieldMatrix partial_eval(const FieldMatrix& m, const Assignment& at);
FieldMatrix to_field(const QMatrix& m);

// "[[a, 0], [0, b]]" with canonical entry strings; parse accepts the same shape.
std::string to_string(const FieldMatrix& m);
FieldMatrix parse_matrix(std::string_view text);

}  // namespace eymkit
