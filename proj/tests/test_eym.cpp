#include <doctest.h>

#include <random>

#include "eymkit/conn.hpp"
#include "eymkit/error.hpp"
#include "eymkit/eym.hpp"
#include "eymkit/geom.hpp"
#include "eymkit/liecat.hpp"
#include "eymkit/linalg.hpp"

using namespace eymkit;

namespace {

RatFunc rf(const char* s) { return RatFunc::parse(s); }
const LiePair& pair(const char* id) { return *builtin_catalog().find(id); }

const CaseReport& report(const std::string& id) {
  static std::map<std::string, CaseReport> cache;
  auto it = cache.find(id);
  if (it == cache.end()) {
    const LiePair* p = builtin_catalog().find(id);
    REQUIRE(p);
    it = cache.emplace(id, run_case(*p)).first;
  }
  return it->second;
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

// Densitized star on scalar 2-forms over Q: (*w)_kl = sum_{i<j} eps_ijkl w^{ij}.
QMatrix numeric_star(const QMatrix& w, const QMatrix& gi) {
  QMatrix up = gi * w * gi.transpose(), out(4, 4);
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l)
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          if (int e = levi(i, j, k, l)) out(k, l) += Rational(e) * up(i, j);
  return out;
}

}  // namespace

TEST_CASE("stress tensor examples") {
  CHECK(report("1.1^1(7)").T ==
        parse_matrix("[[0,0,-1/(2*a),0],[0,b/(2*a^2),0,c/(2*a^2)],[-1/(2*a),0,0,0],[0,c/(2*a^2),0,d/(2*a^2)]]"));
  CHECK(report("3.5^2(2)").T ==
        parse_matrix("[[1/(2*a),0,0,0],[0,1/(2*a),0,0],[0,0,1/(2*a),0],[0,0,0,-3*b/(2*a^2)]]"));
  CHECK(report("1.1^1(10)(t=0)").T.is_zero());
}

TEST_CASE("stress tensor scales with the holonomy metric") {
  const LiePair& p = pair("1.1^1(7)");
  MetricFamily m = solve_invariant_metric(p);
  CurvatureForm f = curvature_form(p, zero_connection());
  FieldMatrix t2 = stress_tensor(f, m, HolonomyMetric{});
  FieldMatrix t4 = stress_tensor(f, m, parse_holonomy_metric("5=4"));
  CHECK(t4 == RatFunc(2) * t2);
  HolonomyMetric hm = parse_holonomy_metric("5=2,6=3/2");
  CHECK(hm.at(6) == rf("3/2"));
  CHECK(hm.at(7) == RatFunc(2));
  CHECK_THROWS_AS(parse_holonomy_metric("5=0"), Error);
  CHECK_THROWS_AS(parse_holonomy_metric("x=1"), Error);
  CHECK_THROWS_AS(parse_holonomy_metric("4=1"), Error);
}

TEST_CASE("stress tensors are symmetric and traceless on the catalog") {
  for (const auto& p : builtin_catalog().pairs) {
    CAPTURE(p.id());
    const CaseReport& r = report(p.id());
    CHECK(r.T == r.T.transpose());
    CHECK((r.levi_civita.g_inv * r.T).trace().is_zero());
    CHECK(r.T_trace.is_zero());
  }
}

TEST_CASE("stress tensors are traceless for random synthetic curvature forms") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> v(-5, 5);
  for (int t = 0; t < 40; ++t) {
    // Random symmetric invertible g and 1..3 random antisymmetric coefficient forms.
    FieldMatrix g(4, 4);
    do {
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) g(i, j) = g(j, i) = RatFunc(v(rng));
    } while (det(g).is_zero());
    std::vector<FieldMatrix> coeffs(1 + t % 3, FieldMatrix(4, 4));
    for (auto& c : coeffs)
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
          c(i, j) = RatFunc(v(rng)) + RatFunc(v(rng)) * rf("s");
          c(j, i) = -c(i, j);
        }
    HolonomyMetric hm;
    hm.overrides[6] = rf("3");
    FieldMatrix gi = inverse(g);
    FieldMatrix T = stress_tensor(coeffs, g, gi, hm);
    CHECK(T == T.transpose());
    CHECK((gi * T).trace().is_zero());
  }
}

TEST_CASE("first EYM verdicts") {
  const EymVerdict& v9 = report("1.1^2(9)").verdict;
  REQUIRE(v9.solution);
  CHECK(v9.lambda == rf("1/(2*a)"));
  CHECK(v9.kappa == rf("a"));
  CHECK(v9.conditions == std::vector<RatFunc>{rf("a")});

  const EymVerdict& v21 = report("2.1^2(1)").verdict;
  REQUIRE(v21.solution);
  CHECK(v21.lambda == rf("(a - b)/(2*a*b)"));
  CHECK(v21.kappa == rf("a*b*(a + b)/(a^2 + b^2)"));
  CHECK(v21.conditions == std::vector<RatFunc>{rf("a"), rf("b"), rf("a + b")});

  const EymVerdict& v24 = report("2.1^2(4)").verdict;
  REQUIRE(v24.solution);
  CHECK(v24.lambda == rf("1/(2*b)"));
  CHECK(v24.kappa == rf("b"));
  CHECK(report("2.1^2(4)").second_eym);

  CHECK(to_string(report("1.1^1(7)").verdict) == "Solution(lambda = -1/(2*a), kappa = a)");
}

TEST_CASE("no-solution verdicts") {
  CHECK(to_string(report("6.1^3(1)").verdict) == "NoSolution(InconsistentSystem)");
  CHECK(to_string(report("2.5^2(6)").verdict) == "NoSolution(InconsistentSystem)");
  CHECK(to_string(report("1.1^1(10)(t=0)").verdict) == "NoSolution(FlatCurvature)");
  CHECK(to_string(report("2.1^2(6)").verdict).rfind("NoSolution(", 0) == 0);
}

TEST_CASE("nonzero stress with lambda = 0 solves 1.4^1(24) and 3.3^2(2)") {
  // Every curvature component involving u1 vanishes and g11 = 0, so T11 = 0.
  for (const char* id : {"1.4^1(24)", "3.3^2(2)"}) {
    CAPTURE(id);
    const CaseReport& r = report(id);
    CHECK(r.T(0, 0).is_zero());
    REQUIRE(r.verdict.solution);
    CHECK(r.verdict.lambda.is_zero());
  }
}

TEST_CASE("solutions satisfy the equation and lambda = s/4") {
  int solutions = 0;
  for (const auto& p : builtin_catalog().pairs) {
    const CaseReport& r = report(p.id());
    if (!r.verdict.solution) continue;
    CAPTURE(p.id());
    ++solutions;
    CHECK_FALSE(r.T.is_zero());
    CHECK_FALSE(r.verdict.kappa.is_zero());
    CHECK(first_eym_residual(r.levi_civita.ricci, r.levi_civita.scalar, r.metric.g, r.T, r.verdict.lambda,
                             r.verdict.kappa)
              .is_zero());
    CHECK(r.verdict.lambda == r.levi_civita.scalar / RatFunc(4));
  }
  CHECK(solutions == 16);
}

TEST_CASE("first EYM residual detects a wrong coupling") {
  const CaseReport& r = report("1.1^1(7)");
  CHECK_FALSE(first_eym_residual(r.levi_civita.ricci, r.levi_civita.scalar, r.metric.g, r.T, r.verdict.lambda,
                                 RatFunc(2) * r.verdict.kappa)
                  .is_zero());
}

TEST_CASE("Hodge star examples") {
  const CaseReport& r = report("1.1^1(7)");
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t l = 0; l < 4; ++l) {
      bool slot = (k == 1 && l == 3) || (k == 3 && l == 1);
      CHECK(r.star[k][l].is_zero() == !slot);
    }
  CHECK(r.star[1][3] == rf("1/a^2") * r.canonical.R[0][2]);

  const CaseReport& r2 = report("2.1^2(1)");
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t l = k + 1; l < 4; ++l) {
      bool slot = (k == 1 && l == 3) || (k == 0 && l == 2);
      CHECK(r2.star[k][l].is_zero() == !slot);
    }

  CurvatureGrid zero(4, std::vector<FieldMatrix>(4, FieldMatrix(4, 4)));
  for (const auto& row : hodge_star(zero, FieldMatrix::identity(4)))
    for (const auto& x : row) CHECK(x.is_zero());
}

TEST_CASE("densitized star squares to 1/det g and matches a numeric star") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> v(-4, 4);
  int checked = 0;
  for (const auto& p : builtin_catalog().pairs) {
    const CaseReport& r = report(p.id());
    for (int s = 0; s < 2; ++s) {
      Assignment at = random_assignment(r.metric.params, 100 + s);
      for (const auto& q : p.params) at[q.name] = Rational(2, 5);
      QMatrix g = eval(r.metric.g, at);
      if (signature_of(g).kind != SignatureKind::Lorentzian) continue;
      QMatrix gi = inverse(g);
      // A random Lie-algebra valued 2-form with matrix values.
      CurvatureGrid W(4, std::vector<FieldMatrix>(4, FieldMatrix(4, 4)));
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
          FieldMatrix x(4, 4);
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) x(a, b) = RatFunc(v(rng));
          W[i][j] = x;
          W[j][i] = -x;
        }
      CurvatureGrid once = hodge_star(W, to_field(gi));
      CurvatureGrid twice = hodge_star(once, to_field(gi));
      Rational inv_det = Rational(1) / det(g);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          QMatrix w(4, 4);
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) w(i, j) = W[i][j](a, b).constant_value();
          QMatrix st = numeric_star(w, gi);
          for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) {
              CHECK(once[k][l](a, b).constant_value() == st(k, l));
              CHECK(twice[k][l](a, b).constant_value() == inv_det * w(k, l));
            }
        }
      ++checked;
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("second EYM for the canonical connection") {
  for (const auto& p : builtin_catalog().pairs) {
    CAPTURE(p.id());
    const CaseReport& r = report(p.id());
    CHECK(r.second_eym);
    CHECK(r.second_eym_slot);
    CHECK(r.second_eym == r.second_eym_slot);
  }
  const LiePair& p = pair("3.5^2(2)");
  CHECK(is_zero(second_eym_residual(p, zero_connection().maps, report("3.5^2(2)").star)));
  CurvatureGrid zero(4, std::vector<FieldMatrix>(4, FieldMatrix(4, 4)));
  CHECK(is_zero(second_eym_residual(p, solve_connections(p, solve_invariant_metric(p)).maps, zero)));
}

TEST_CASE("second EYM for the general connection families") {
  // The general family is Yang-Mills with its own curvature for 2.5^2 and 3.3^2
  // but not for 1.1^1(7) or 3.5^2(2); the displayed v24/z24 family is.
  CHECK(report("2.5^2(4)").family_second_eym);
  CHECK(report("3.3^2(2)").family_second_eym);
  CHECK_FALSE(report("1.1^1(7)").family_second_eym);
  CHECK_FALSE(report("3.5^2(2)").family_second_eym);
  CHECK(report("1.1^1(7)").golden_family_second_eym == std::optional<bool>(true));
  for (const auto& p : builtin_catalog().pairs) {
    CAPTURE(p.id());
    const CaseReport& r = report(p.id());
    CHECK(r.family_second_eym == r.family_second_eym_slot);
  }
}

TEST_CASE("a nonzero connection member breaks closedness of the canonical star") {
  // With Lambda = 0 on a symmetric pair every invariant form is closed; a
  // member of the 8-parameter family of 1.1^1(7) is not compatible with *R.
  const LiePair& p = pair("1.1^1(7)");
  const CaseReport& r = report("1.1^1(7)");
  CHECK(is_zero(second_eym_residual(p, zero_connection().maps, r.star)));
  auto maps = instantiate(r.family, random_assignment(r.family.params, 4));
  CHECK_FALSE(is_zero(second_eym_residual(p, maps, r.star)));
  CHECK_FALSE(r.family_canonical_star);
}

TEST_CASE("case reports compare against the catalog") {
  const CaseReport& r = report("1.1^1(7)");
  CHECK(r.golden_check("ricci")->status == GoldenStatus::Pass);
  CHECK(r.golden_check("lambda")->status == GoldenStatus::Pass);
  CHECK(r.golden_check("connection")->status == GoldenStatus::Fail);
  CHECK(r.golden_check("nonexistent") == nullptr);
  for (const auto& c : invariant_suite(pair("1.1^1(7)"), r)) {
    CAPTURE(c.name);
    CHECK(c.pass);
  }
}
