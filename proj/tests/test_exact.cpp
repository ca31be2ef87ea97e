#include <doctest.h>

#include <random>

#include "eymkit/error.hpp"
#include "eymkit/ratfunc.hpp"

using namespace eymkit;

namespace {

RatFunc rf(const char* s) { return RatFunc::parse(s); }

// Small random polynomial in a, b, c: up to 3 terms, degree <= 2, coefficients in [-3, 3].
Poly random_poly(std::mt19937& rng) {
  static const char* names[] = {"a", "b", "c"};
  std::uniform_int_distribution<int> coef(-3, 3), nterms(1, 3), var(0, 2), deg(0, 2);
  std::vector<Term> ts;
  for (int k = nterms(rng); k > 0; --k) {
    Monomial m;
    for (int d = deg(rng); d > 0; --d) m = m * Monomial::of(eymkit::var(names[var(rng)]));
    ts.push_back({m, Rational(coef(rng))});
  }
  return Poly::from_terms(ts);
}

RatFunc random_ratfunc(std::mt19937& rng) {
  Poly d;
  do d = random_poly(rng);
  while (d.is_zero());
  return RatFunc(random_poly(rng), d);
}

Assignment random_point(std::mt19937& rng) {
  std::uniform_int_distribution<int> n(-20, 20), d(1, 7);
  return {{"a", Rational(n(rng), d(rng))}, {"b", Rational(n(rng), d(rng))}, {"c", Rational(n(rng), d(rng))}};
}

}  // namespace

TEST_CASE("rational canonical form") {
  CHECK(Rational::parse("-6/4").str() == "-3/2");
  CHECK(Rational(0, 5).den() == 1);
  CHECK(Rational::parse("-0").is_zero());
  CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
  CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
}

TEST_CASE("ratfunc arithmetic examples") {
  CHECK((rf("a^2 - b^2") / rf("a + b")) == rf("a - b"));
  CHECK((rf("a^2 - b^2") / rf("a + b")).str() == "a - b");
  CHECK((rf("1/a") + rf("1/a")).str() == "2/a");
  CHECK((rf("b*d - c^2") * rf("a^2")) == rf("a^2*b*d - a^2*c^2"));
  CHECK(rf("(a - b)/(2*a*b)").str() == "(a - b)/(2*a*b)");
  CHECK(rf("-1/(2*a)").str() == "-1/(2*a)");
  CHECK_THROWS_AS(rf("a") / RatFunc(), Error);
  try {
    (void)(rf("a") / RatFunc());
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZero);
  }
}

TEST_CASE("ratfunc canonical sign and content") {
  RatFunc x(Poly(Rational(4)) * Poly::variable("a"), Poly(Rational(-6)) * Poly::variable("b"));
  CHECK(x.str() == "-2*a/(3*b)");
  CHECK(x.den().leading().coef.sign() > 0);
  CHECK(RatFunc(Poly::variable("a")) / RatFunc(Poly::variable("a")) == RatFunc(1));
  CHECK((RatFunc(1) / rf("-1/b")).str() == "-b");
  CHECK((rf("a") / RatFunc(-1)).str() == "-a");
  CHECK((rf("a/(a - b)") * rf("(b - a)/c")).str() == "-a/c");
  CHECK(RatFunc(Rational(3, 2)) == rf("3/2"));
  CHECK(RatFunc(Rational(3, 2)) == RatFunc(3) / RatFunc(2));
  CHECK(RatFunc(Rational(-3, 2)).den() == Poly(2));
}

TEST_CASE("multivariate gcd cancels shared factors") {
  RatFunc x = rf("(x + y)*(x - y + z)") / rf("(x + y)^2");
  CHECK(x == rf("(x - y + z)/(x + y)"));
  Poly g = gcd(rf("(a + b)^2*(a - c)").num(), rf("(a + b)*(a - c)^2*b").num());
  CHECK(RatFunc(g) == rf("a^2 + a*b - a*c - b*c"));
}

TEST_CASE("ratfunc evaluation") {
  CHECK(rf("(a - b)/(2*a*b)").eval({{"a", Rational(1)}, {"b", Rational(-1)}}) == Rational(-1));
  CHECK(rf("-1/(2*a)").eval({{"a", Rational(3)}}) == Rational(-1, 6));
  try {
    (void)rf("1/a").eval({{"a", Rational(0)}});
    FAIL("expected a pole");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleAtPoint);
  }
  try {
    (void)rf("a + b").eval({{"a", Rational(1)}});
    FAIL("expected a missing parameter");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingParam);
  }
}

TEST_CASE("ratfunc zero test is exact") {
  CHECK((rf("a + b") - rf("b + a")).is_zero());
  CHECK_FALSE(rf("1/a").is_zero());
  CHECK((rf("1/(a - b)") - rf("1/(b - a)") - rf("2/(a - b)")).is_zero());
}

TEST_CASE("parse round-trips printed forms") {
  std::mt19937 rng(42);
  for (int i = 0; i < 300; ++i) {
    RatFunc x = random_ratfunc(rng);
    CHECK(RatFunc::parse(x.str()) == x);
  }
  CHECK_THROWS_AS(RatFunc::parse("a +"), Error);
  CHECK_THROWS_AS(RatFunc::parse("(a"), Error);
}

TEST_CASE("field axioms on random rational functions") {
  std::mt19937 rng(7);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    RatFunc x = random_ratfunc(rng), y = random_ratfunc(rng), z = random_ratfunc(rng);
    REQUIRE((x + y) + z == x + (y + z));
    REQUIRE((x * y) * z == x * (y * z));
    REQUIRE(x * (y + z) == x * y + x * z);
    REQUIRE(x + y == y + x);
    REQUIRE(x * y == y * x);
    REQUIRE((x - x).is_zero());
    if (!x.is_zero()) REQUIRE(x * (RatFunc(1) / x) == RatFunc(1));
    REQUIRE(x.normalized() == x);
    REQUIRE(x.normalized().normalized() == x.normalized());
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("evaluation is a ring homomorphism away from poles") {
  std::mt19937 rng(11);
  int used = 0;
  for (int i = 0; i < 1000; ++i) {
    RatFunc x = random_ratfunc(rng), y = random_ratfunc(rng);
    Assignment at = random_point(rng);
    try {
      Rational ex = x.eval(at), ey = y.eval(at);
      CHECK((x + y).eval(at) == ex + ey);
      CHECK((x * y).eval(at) == ex * ey);
      ++used;
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::PoleAtPoint);
    }
  }
  CHECK(used > 500);
}

TEST_CASE("monomial order is graded lexicographic") {
  Poly p = rf("b + a^2 + a*b + 1 + c^3").num();
  REQUIRE(p.terms().size() == 5);
  CHECK(p.leading().mono.degree() == 3);
  CHECK(RatFunc(Poly::monomial(p.terms()[1].mono, Rational(1))).str() == "a^2");
  CHECK(RatFunc(Poly::monomial(p.terms()[2].mono, Rational(1))).str() == "a*b");
}

TEST_CASE("interned names are shared") {
  CHECK(var("v24") == var(std::string("v") + "24"));
  CHECK(var("a") != var("b"));
}
