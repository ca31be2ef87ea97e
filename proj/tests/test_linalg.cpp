#include <doctest.h>

#include <random>

#include "eymkit/error.hpp"
#include "eymkit/geom.hpp"
#include "eymkit/liecat.hpp"
#include "eymkit/linalg.hpp"

using namespace eymkit;

namespace {

RatFunc rf(const char* s) { return RatFunc::parse(s); }

// Laplace expansion over Q; independent of the elimination code.
Rational cofactor_det(const QMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  Rational s(0);
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    QMatrix sub(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, k = 0; c < n; ++c)
        if (c != j) sub(r - 1, k++) = m(r, c);
    Rational t = m(0, j) * cofactor_det(sub);
    s += (j % 2 == 0) ? t : -t;
  }
  return s;
}

// Coefficient matrix of rho^T g + g rho = 0 in the 10 upper-triangle entries of g.
QMatrix invariance_system(const std::vector<FieldMatrix>& rho) {
  int idx[4][4];
  for (int i = 0, k = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) idx[i][j] = idx[j][i] = k++;
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : rho) {
    QMatrix q = eval(r, {});
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        std::vector<Rational> row(10);
        // (rho^T g)_{ij} + (g rho)_{ij} = sum_k rho_{ki} g_{kj} + g_{ik} rho_{kj}
        for (int k = 0; k < 4; ++k) {
          row[idx[k][j]] += q(k, i);
          row[idx[i][k]] += q(k, j);
        }
        rows.push_back(row);
      }
  }
  QMatrix m(rows.size(), 10);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < 10; ++j) m(i, j) = rows[i][j];
  return m;
}

FieldMatrix random_matrix(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> c(-3, 3), pick(0, 4);
  const char* atoms[] = {"0", "1", "a", "b", "a - b"};
  FieldMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = RatFunc(c(rng)) * rf(atoms[pick(rng)]) + RatFunc(c(rng));
  return m;
}

}  // namespace

TEST_CASE("rref of identity and zero") {
  auto id = rref(QMatrix::identity(4));
  CHECK(id.m == QMatrix::identity(4));
  CHECK(id.pivots == std::vector<std::size_t>{0, 1, 2, 3});
  auto z = rref(QMatrix(2, 3));
  CHECK(z.m == QMatrix(2, 3));
  CHECK(z.pivots.empty());
}

TEST_CASE("rref is reduced and unique under row operations") {
  FieldMatrix m = parse_matrix("[[a, 1, 0], [2*a, 2, b], [0, 0, 1]]");
  auto r = rref(m);
  CHECK(r.pivots == std::vector<std::size_t>{0, 2});
  CHECK(r.m(0, 1) == rf("1/a"));
  FieldMatrix mixed = m;
  for (std::size_t j = 0; j < 3; ++j) mixed(2, j) = m(2, j) + rf("b + 1") * m(0, j);
  CHECK(rref(mixed).m == r.m);
}

TEST_CASE("invariant metric system has rank 6 for 1.1^1") {
  const LiePair* p = builtin_catalog().find("1.1^1(7)");
  REQUIRE(p);
  QMatrix sys = invariance_system(isotropy_rep(*p));
  CHECK(rank(sys) == 6);
  CHECK(nullspace(sys).size() == 4);
}

TEST_CASE("nullspace") {
  CHECK(nullspace(QMatrix::identity(3)).empty());
  QMatrix m(1, 2, {Rational(1), Rational(-1)});
  auto ns = nullspace(m);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0] == std::vector<Rational>{1, 1});
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    FieldMatrix a = random_matrix(rng, 4);
    for (std::size_t j = 0; j < 4; ++j) a(3, j) = a(0, j) + rf("a") * a(1, j);
    auto basis = nullspace(a);
    CHECK(basis.size() == 4 - rank(a));
    for (const auto& v : basis) {
      FieldMatrix col(4, 1, v);
      CHECK((a * col).is_zero());
    }
  }
}

TEST_CASE("earliest-free homogeneous solution keeps the first columns free") {
  // x0 + x1 + x2 = 0: the free unknowns are x0 and x1, x2 is solved.
  QMatrix m(1, 3, {Rational(1), Rational(1), Rational(1)});
  auto s = solve_homogeneous_earliest_free(m);
  CHECK(s.free == std::vector<std::size_t>{0, 1});
  // value[unknown][k] is the coefficient of the k-th free unknown.
  REQUIRE(s.value.size() == 3);
  CHECK(s.value[0] == std::vector<Rational>{1, 0});
  CHECK(s.value[1] == std::vector<Rational>{0, 1});
  CHECK(s.value[2] == std::vector<Rational>{-1, -1});
}

TEST_CASE("determinants of catalog metric families") {
  CHECK(det(FieldMatrix::identity(4)) == RatFunc(1));
  MetricFamily m11 = solve_invariant_metric(*builtin_catalog().find("1.1^1(7)"));
  CHECK(det(m11.g) == rf("a^2*(c^2 - b*d)"));
  MetricFamily m35 = solve_invariant_metric(*builtin_catalog().find("3.5^2(2)"));
  CHECK(det(m35.g) == rf("a^3*b"));
  CHECK_THROWS_AS(det(FieldMatrix(2, 3)), Error);
}

TEST_CASE("inverse") {
  FieldMatrix d = parse_matrix("[[a, 0, 0, 0], [0, a, 0, 0], [0, 0, a, 0], [0, 0, 0, b]]");
  CHECK(inverse(d) == parse_matrix("[[1/a, 0, 0, 0], [0, 1/a, 0, 0], [0, 0, 1/a, 0], [0, 0, 0, 1/b]]"));

  MetricFamily m = solve_invariant_metric(*builtin_catalog().find("1.1^1(7)"));
  FieldMatrix gi = inverse(m.g);
  CHECK(gi(0, 2) == rf("1/a"));
  RatFunc D = rf("b*d - c^2");
  CHECK(gi(1, 1) == rf("d") / D);
  CHECK(gi(1, 3) == rf("-c") / D);
  CHECK(gi(3, 3) == rf("b") / D);
  CHECK(m.g * gi == FieldMatrix::identity(4));

  try {
    (void)inverse(FieldMatrix(3, 3));
    FAIL("expected Singular");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Singular);
  }
}

TEST_CASE("random matrices: inverse, determinant and pivot product") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> pt(-9, 9);
  int invertible = 0;
  for (int t = 0; t < 30; ++t) {
    FieldMatrix a = random_matrix(rng, 4);
    RatFunc d = det(a);
    if (!d.is_zero()) {
      ++invertible;
      CHECK(a * inverse(a) == FieldMatrix::identity(4));
    }
    for (int s = 0; s < 3; ++s) {
      Assignment at{{"a", Rational(pt(rng), 2)}, {"b", Rational(pt(rng), 3)}};
      QMatrix q = eval(a, at);
      Rational oracle = cofactor_det(q);
      CHECK(d.eval(at) == oracle);
      auto pp = elimination_pivots(q);
      if (pp.singular) {
        CHECK(oracle.is_zero());
      } else {
        Rational prod(pp.sign);
        for (const auto& x : pp.pivots) prod *= x;
        CHECK(prod == oracle);
      }
    }
  }
  CHECK(invertible > 15);
}

TEST_CASE("solve returns a particular solution") {
  QMatrix m(2, 2, {Rational(1), Rational(2), Rational(3), Rational(4)});
  auto x = solve(m, std::vector<Rational>{5, 6});
  REQUIRE(x);
  CHECK((*x)[0] == Rational(-4));
  CHECK((*x)[1] == Rational(9, 2));
  QMatrix s(2, 1, {Rational(1), Rational(1)});
  CHECK_FALSE(solve(s, std::vector<Rational>{1, 2}));
}
