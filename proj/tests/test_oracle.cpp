#include <doctest.h>

#include "eymkit/eym.hpp"
#include "eymkit/liecat.hpp"
#include "oracle_compare.hpp"

using namespace eymkit;

TEST_CASE("symbolic pipeline agrees with the numeric oracle at random points") {
  for (const auto& p : builtin_catalog().pairs) {
    CAPTURE(p.id());
    CaseReport r = run_case(p);
    auto c = oracle::compare_case(p, r, 5, 31);
    CHECK(c.points == 5);
    for (const auto& m : c.mismatches) {
      CAPTURE(m);
      CHECK(false);
    }
  }
}

TEST_CASE("the oracle sees a perturbed stress tensor") {
  const LiePair& p = *builtin_catalog().find("1.1^1(7)");
  CaseReport r = run_case(p);
  r.T(0, 2) = r.T(0, 2) + RatFunc(1);
  auto c = oracle::compare_case(p, r, 1, 31);
  CHECK_FALSE(c.pass());
}
