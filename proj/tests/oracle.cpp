#include "oracle.hpp"

#include "eymkit/error.hpp"

namespace oracle {

namespace {

using eymkit::Error;
using eymkit::ErrorKind;

Mat zero() {
  Mat m;
  for (auto& r : m) r.fill(Rational(0));
  return m;
}

Mat mul(const Mat& a, const Mat& b) {
  Mat c = zero();
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      if (!a[i][k].is_zero())
        for (int j = 0; j < 4; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Mat comm(const Mat& a, const Mat& b) {
  Mat x = mul(a, b), y = mul(b, a);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) x[i][j] -= y[i][j];
  return x;
}

// Gauss-Jordan inverse with first-nonzero pivoting.
Mat invert(Mat a) {
  Mat inv = zero();
  for (int i = 0; i < 4; ++i) inv[i][i] = Rational(1);
  for (int c = 0; c < 4; ++c) {
    int p = c;
    while (p < 4 && a[p][c].is_zero()) ++p;
    if (p == 4) throw Error(ErrorKind::SingularMetric, "oracle: singular metric");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Rational f = Rational(1) / a[c][c];
    for (int j = 0; j < 4; ++j) {
      a[c][j] *= f;
      inv[c][j] *= f;
    }
    for (int r = 0; r < 4; ++r)
      if (r != c && !a[r][c].is_zero()) {
        Rational h = a[r][c];
        for (int j = 0; j < 4; ++j) {
          a[r][j] -= h * a[c][j];
          inv[r][j] -= h * inv[c][j];
        }
      }
  }
  return inv;
}

int levi(int i, int j, int k, int l) {
  int v[4] = {i, j, k, l}, s = 1;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      if (v[a] == v[b]) return 0;
      if (v[a] > v[b]) s = -s;
    }
  return s;
}

// Structure constants at the point: c[x][y][k] = coefficient of basis k in [x, y].
struct Constants {
  std::size_t n = 0;
  std::vector<std::vector<std::vector<Rational>>> c;
  Rational h(std::size_t x, std::size_t y, std::size_t k) const { return c[x][y][k]; }
  Rational m(std::size_t x, std::size_t y, std::size_t k) const { return c[x][y][n + k]; }
};

Constants constants(const eymkit::LiePair& p, const Assignment& at) {
  Constants s;
  s.n = p.dim_h();
  s.c.assign(p.dim(), std::vector<std::vector<Rational>>(p.dim(), std::vector<Rational>(p.dim())));
  for (std::size_t x = 0; x < p.dim(); ++x)
    for (std::size_t y = 0; y < p.dim(); ++y)
      for (std::size_t k = 0; k < p.dim(); ++k) s.c[x][y][k] = p.bracket(x, y)[k].eval(at);
  return s;
}

// rho(e_a) u_i = [e_a, u_i]; column i holds its u-components.
std::vector<Mat> isotropy(const Constants& s) {
  std::vector<Mat> rho(s.n, zero());
  for (std::size_t a = 0; a < s.n; ++a)
    for (int i = 0; i < 4; ++i)
      for (int r = 0; r < 4; ++r) rho[a][r][i] = s.m(a, s.n + i, r);
  return rho;
}

// Rank of a list of rational vectors.
std::size_t rank_of(std::vector<std::vector<Rational>> rows) {
  std::size_t rk = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rk < rows.size(); ++c) {
    std::size_t p = rk;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rk]);
    for (std::size_t r = rk + 1; r < rows.size(); ++r)
      if (!rows[r][c].is_zero()) {
        Rational f = rows[r][c] / rows[rk][c];
        for (std::size_t j = c; j < cols; ++j) rows[r][j] -= f * rows[rk][j];
      }
    ++rk;
  }
  return rk;
}

}  // namespace

Mat to_mat(const eymkit::QMatrix& m) {
  Mat out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = m(i, j);
  return out;
}

std::vector<std::vector<Mat>> curvature(const eymkit::LiePair& p, const Assignment& at, const std::array<Mat, 4>& lam) {
  Constants s = constants(p, at);
  auto rho = isotropy(s);
  std::vector<std::vector<Mat>> R(4, std::vector<Mat>(4, zero()));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Mat x = comm(lam[i], lam[j]);
      for (int k = 0; k < 4; ++k) {
        Rational cm = s.m(s.n + i, s.n + j, k);
        if (cm.is_zero()) continue;
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) x[a][b] -= cm * lam[k][a][b];
      }
      for (std::size_t e = 0; e < s.n; ++e) {
        Rational ch = s.h(s.n + i, s.n + j, e);
        if (ch.is_zero()) continue;
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) x[a][b] -= ch * rho[e][a][b];
      }
      R[i][j] = x;
    }
  return R;
}

Pipeline run(const eymkit::LiePair& p, const eymkit::FieldMatrix& g_sym, const Assignment& at) {
  Pipeline q;
  q.g = to_mat(eymkit::eval(g_sym, at));
  q.gi = invert(q.g);
  Constants s = constants(p, at);
  const std::size_t n = s.n;

  // Levi-Civita Nomizu maps from the Koszul formula on m.
  auto gb = [&](int i, int j, int k) {
    Rational v(0);
    for (int r = 0; r < 4; ++r) v += s.m(n + i, n + j, r) * q.g[r][k];
    return v;
  };
  std::array<Mat, 4> lc;
  for (int i = 0; i < 4; ++i) {
    lc[i] = zero();
    for (int j = 0; j < 4; ++j)
      for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 4; ++k)
          lc[i][r][j] += q.gi[r][k] * (gb(i, j, k) - gb(j, k, i) + gb(k, i, j)) / Rational(2);
  }
  auto RL = curvature(p, at, lc);
  for (int y = 0; y < 4; ++y)
    for (int z = 0; z < 4; ++z) {
      Rational v(0);
      for (int x = 0; x < 4; ++x) v += RL[x][y][x][z];
      q.ricci[y][z] = v;
    }
  q.scalar = Rational(0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) q.scalar += q.gi[i][j] * q.ricci[j][i];

  // Canonical connection: R(u_i, u_j) = -rho([u_i, u_j]_h).
  std::array<Mat, 4> none;
  none.fill(zero());
  q.R = curvature(p, at, none);

  // Holonomy inside h: span of the h-parts of [u_i, u_j], closed under brackets.
  std::vector<std::vector<Rational>> span;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      std::vector<Rational> v(n);
      for (std::size_t e = 0; e < n; ++e) v[e] = s.h(n + i, n + j, e);
      auto t = span;
      t.push_back(v);
      if (rank_of(t) > span.size()) span.push_back(v);
    }
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t a = 0; a < span.size() && !grew; ++a)
      for (std::size_t b = a + 1; b < span.size() && !grew; ++b) {
        std::vector<Rational> v(n);
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y)
            for (std::size_t e = 0; e < n; ++e) v[e] += span[a][x] * span[b][y] * s.h(x, y, e);
        auto t = span;
        t.push_back(v);
        if (rank_of(t) > span.size()) {
          span.push_back(v);
          grew = true;
        }
      }
  }
  q.hol_dim = span.size();
  // Basis: the e_k lying in the span, in order; components -c^k_ij.
  std::vector<std::size_t> picked;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Rational> unit(n);
    unit[k] = Rational(1);
    auto t = span;
    t.push_back(unit);
    if (rank_of(t) == span.size()) picked.push_back(k);
  }
  if (picked.size() != span.size()) throw Error(ErrorKind::BadArgument, "oracle: holonomy not spanned by isotropy generators");

  q.T = zero();
  for (std::size_t k : picked) {
    Mat Ra = zero();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) Ra[i][j] = -s.h(n + i, n + j, k);
    const Rational gaa(2);
    Rational full(0);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) full += Ra[a][b] * Ra[c][d] * q.gi[a][c] * q.gi[b][d];
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Rational v(0);
        for (int k2 = 0; k2 < 4; ++k2)
          for (int l = 0; l < 4; ++l) v += Ra[i][k2] * q.gi[k2][l] * Ra[j][l];
        q.T[i][j] += gaa / Rational(2) * (v - q.g[i][j] * full / Rational(4));
      }
  }

  q.star.assign(4, std::vector<Mat>(4, zero()));
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l)
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
          int e = levi(i, j, k, l);
          if (!e) continue;
          // R^{ij} = g^{ia} g^{jb} R_ab, matrix-valued.
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
              Rational w = q.gi[i][a] * q.gi[j][b] * Rational(e);
              if (w.is_zero()) continue;
              for (int x = 0; x < 4; ++x)
                for (int y = 0; y < 4; ++y) q.star[k][l][x][y] += w * q.R[a][b][x][y];
            }
        }
  return q;
}

Mat first_residual(const Pipeline& q, const Rational& lambda, const Rational& kappa) {
  Mat r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      r[i][j] = q.ricci[i][j] + (lambda - q.scalar / Rational(2)) * q.g[i][j] - kappa * q.T[i][j];
  return r;
}

std::array<Mat, 4> second_residual(const eymkit::LiePair& p, const Assignment& at, const std::array<Mat, 4>& lam,
                                   const std::vector<std::vector<Mat>>& W) {
  Constants s = constants(p, at);
  const int triples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  std::array<Mat, 4> out;
  for (int t = 0; t < 4; ++t) {
    Mat acc = zero();
    int x0 = triples[t][0], y0 = triples[t][1], z0 = triples[t][2];
    int cyc[3][3] = {{x0, y0, z0}, {y0, z0, x0}, {z0, x0, y0}};
    for (auto& c : cyc) {
      int X = c[0], Y = c[1], Z = c[2];
      Mat term = comm(lam[X], W[Y][Z]);
      for (int k = 0; k < 4; ++k) {
        Rational cm = s.m(s.n + X, s.n + Y, k);
        if (cm.is_zero()) continue;
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) term[a][b] -= cm * W[k][Z][a][b];
      }
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) acc[a][b] += term[a][b];
    }
    out[t] = acc;
  }
  return out;
}

}  // namespace oracle
