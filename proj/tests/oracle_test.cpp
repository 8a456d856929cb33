#include <gtest/gtest.h>

#include "nilsolve/error.hpp"
#include "nilsolve/oracle.hpp"
#include "test_util.hpp"

using namespace nilsolve;
using namespace nilsolve::testing;

TEST(Oracle, SpaceLimit) {
  EXPECT_EQ(oracle_space(4, 3), 64u);
  EXPECT_EQ(oracle_space(10, 7), 10'000'000u);
  EXPECT_FALSE(oracle_space(10, 8));
  EXPECT_EQ(oracle_space(1000, 0), 1u);
}

TEST(Oracle, RangeOverTheField) {
  const auto f2 = make_zmod(2);
  const auto report = brute_range(f2, parse_poly("x1*x2 + e1", f2), 2);
  EXPECT_EQ(report.values, (std::vector<Elem>{0, 1}));
  EXPECT_EQ(report.evaluations_used, 4u);
  EXPECT_FALSE(report.k);
  EXPECT_EQ(report.witnesses.at(0), (Point{1, 1}));
  EXPECT_EQ(report.witnesses.at(1), (Point{0, 0}));
}

TEST(Oracle, UnsolvableOverTheField) {
  // x^2 + x + 1 never vanishes over Z/2.
  const auto f2 = make_zmod(2);
  const auto v = brute_solvable(f2, parse_poly("x1*x1 + x1 + e1", f2), PolyExpr::constant(0), 1);
  EXPECT_FALSE(v.solvable);
  EXPECT_EQ(v.points_examined, 2u);
}

TEST(Oracle, FieldIdentity) {
  // x1*(x2*x1) and x1*x2 agree on Z/2 since x*x = x.
  const auto f2 = make_zmod(2);
  EXPECT_TRUE(brute_equivalent(f2, parse_poly("x1*(x2*x1)", f2), parse_poly("x1*x2", f2), 2).equivalent);
  const auto z3 = make_zmod(3);
  const auto v = brute_equivalent(z3, parse_poly("x1*(x2*x1)", z3), parse_poly("x1*x2", z3), 2);
  EXPECT_FALSE(v.equivalent);
  ASSERT_TRUE(v.counterexample);
  const auto& c = *v.counterexample;
  EXPECT_NE(z3.mul(c[0], z3.mul(c[1], c[0])), z3.mul(c[0], c[1]));
}

TEST(Oracle, SolutionsOfAProductEquation) {
  // x1*x2 = 4 in 2Z/8Z has exactly the solutions (2|6, 2|6); the first in
  // x1-major order is (2, 2).
  const auto r8 = ring_2z8();
  const auto v = brute_solvable(r8, parse_poly("x1*x2 + e2", r8), PolyExpr::constant(0), 2);
  ASSERT_TRUE(v.solvable);
  EXPECT_EQ(v.witness, (Point{1, 1}));
  EXPECT_EQ(v.points_examined, 6u);
  int roots = 0;
  for (const auto& p : all_points(r8, 2)) roots += evaluate(parse_poly("x1*x2 + e2", r8), r8, p) == 0;
  EXPECT_EQ(roots, 4);
}

TEST(Oracle, TooLarge) {
  const auto ring = make_zero_mul(100);
  try {
    brute_range(ring, PolyExpr::var(1), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SearchSpaceTooLarge);
  }
}
