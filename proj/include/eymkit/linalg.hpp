#pragma once

#include <optional>
#include <vector>

#include "eymkit/matrix.hpp"

namespace eymkit {

template <class T>
struct RrefResult {
  Matrix<T> m;
  std::vector<std::size_t> pivots;
};

// Cost of dividing by x during elimination; cheaper pivots keep symbolic
// entries small. The reduced form itself does not depend on the choice.
inline std::size_t pivot_weight(const Rational& x) {
  return mpz_sizeinbase(x.raw().get_num_mpz_t(), 2) + mpz_sizeinbase(x.raw().get_den_mpz_t(), 2);
}
inline std::size_t pivot_weight(const RatFunc& x) {
  std::size_t w = 0;
  for (const Poly* p : {&x.num(), &x.den()})
    for (const auto& t : p->terms()) w += 64 * (t.mono.degree() + 1) + pivot_weight(t.coef);
  return w;
}

// Reduced row echelon form by Gauss-Jordan elimination. In each column the
// pivot is the nonzero entry of least pivot_weight among the unused rows.
template <class T>
RrefResult<T> rref(Matrix<T> m) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t col = 0; col < C && row < R; ++col) {
    std::size_t p = R;
    std::size_t best = 0;
    for (std::size_t i = row; i < R; ++i) {
      if (is_zero(m(i, col))) continue;
      std::size_t w = pivot_weight(m(i, col));
      if (p == R || w < best) p = i, best = w;
    }
    if (p == R) continue;
    if (p != row)
      for (std::size_t j = 0; j < C; ++j) std::swap(m(p, j), m(row, j));
    const T pv = m(row, col);
    for (std::size_t j = col; j < C; ++j)
      if (!is_zero(m(row, j))) m(row, j) /= pv;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const T f = m(i, col);
      for (std::size_t j = col; j < C; ++j)
        if (!is_zero(m(row, j))) m(i, j) -= f * m(row, j);
    }
    piv.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(piv)};
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  return rref(m).pivots.size();
}

// Kernel basis: one vector per free column (in column order), that free
// variable set to 1 and the other free variables 0.
template <class T>
std::vector<std::vector<T>> nullspace(const Matrix<T>& m) {
  auto [r, piv] = rref(m);
  std::vector<std::vector<T>> basis;
  std::vector<bool> is_piv(m.cols(), false);
  for (auto p : piv) is_piv[p] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    std::vector<T> v(m.cols(), T(0));
    v[f] = T(1);
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -r(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// General solution of m·x = 0 with the free unknowns chosen as early as
// possible in column order: free[k] is a column index and value[j][k] the
// coefficient of free unknown k in unknown j.
template <class T>
struct HomogeneousSolution {
  std::vector<std::size_t> free;
  std::vector<std::vector<T>> value;
};

template <class T>
HomogeneousSolution<T> solve_homogeneous_earliest_free(const Matrix<T>& m) {
  const std::size_t C = m.cols();
  Matrix<T> rev(m.rows(), C);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < C; ++j) rev(i, j) = m(i, C - 1 - j);
  auto [r, piv] = rref(rev);
  std::vector<bool> is_piv(C, false);
  for (auto p : piv) is_piv[p] = true;
  HomogeneousSolution<T> out;
  for (std::size_t f = C; f-- > 0;)
    if (!is_piv[f]) out.free.push_back(C - 1 - f);
  out.value.assign(C, std::vector<T>(out.free.size(), T(0)));
  for (std::size_t k = 0; k < out.free.size(); ++k) {
    const std::size_t f = C - 1 - out.free[k];
    out.value[out.free[k]][k] = T(1);
    for (std::size_t i = 0; i < piv.size(); ++i)
      if (!is_zero(r(i, f))) out.value[C - 1 - piv[i]][k] = -r(i, f);
  }
  return out;
}

// Bareiss determinant.
template <class T>
T det(Matrix<T> m) {
  if (!m.is_square()) throw Error(ErrorKind::NonSquare, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return T(1);
  T prev(1);
  bool neg = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(m(k, k))) {
      std::size_t p = k + 1;
      while (p < n && is_zero(m(p, k))) ++p;
      if (p == n) return T(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
      neg = !neg;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        T x = m(k, k) * m(i, j);
        if (!is_zero(m(i, k)) && !is_zero(m(k, j))) x -= m(i, k) * m(k, j);
        m(i, j) = x / prev;
      }
    prev = m(k, k);
  }
  return neg ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

// Ordinary elimination pivots and row-swap parity: det = sign·Π pivots.
template <class T>
struct PivotProduct {
  std::vector<T> pivots;
  int sign = 1;
  bool singular = false;
};

template <class T>
PivotProduct<T> elimination_pivots(Matrix<T> m) {
  PivotProduct<T> out;
  const std::size_t n = m.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && is_zero(m(p, k))) ++p;
    if (p == n) {
      out.singular = true;
      return out;
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
      out.sign = -out.sign;
    }
    out.pivots.push_back(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      T f = m(i, k) / m(k, k);
      if (is_zero(f)) continue;
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return out;
}

template <class T>
Matrix<T> minor_matrix(const Matrix<T>& m, std::size_t r, std::size_t c) {
  Matrix<T> s(m.rows() - 1, m.cols() - 1);
  for (std::size_t i = 0, si = 0; i < m.rows(); ++i) {
    if (i == r) continue;
    for (std::size_t j = 0, sj = 0; j < m.cols(); ++j) {
      if (j == c) continue;
      s(si, sj++) = m(i, j);
    }
    ++si;
  }
  return s;
}

template <class T>
Matrix<T> adjugate(const Matrix<T>& m) {
  if (!m.is_square()) throw Error(ErrorKind::NonSquare, "adjugate of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix<T> adj(n, n);
  if (n == 1) {
    adj(0, 0) = T(1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      T c = det(minor_matrix(m, i, j));
      adj(j, i) = ((i + j) % 2 == 0) ? c : -c;
    }
  return adj;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  T d = det(m);
  if (is_zero(d)) throw Error(ErrorKind::Singular, "inverse of a singular matrix");
  return (T(1) / d) * adjugate(m);
}

// Some x with m·x = b, or nullopt when inconsistent. Free unknowns are 0.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& m, const std::vector<T>& b) {
  Matrix<T> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto [r, piv] = rref(aug);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  std::vector<T> x(m.cols(), T(0));
  for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = r(k, m.cols());
  return x;
}

}  // namespace eymkit
