#include <gtest/gtest.h>

#include "alc/conformal.hpp"
#include "alc/errors.hpp"

namespace alc {
namespace {

void expect_all_pass(const std::vector<Check>& cs) {
  for (const auto& c : cs) EXPECT_TRUE(c.pass) << c.name << ": " << c.witness;
}

class ConformalCases : public ::testing::TestWithParam<std::tuple<i64, i64, i64>> {};

TEST_P(ConformalCases, ClosedFormMatchesSolver) {
  auto [d1, d2, p] = GetParam();
  ConformalData cd = solve_conformal(d1, d2, p, 2);
  auto cs = verify_conformal(cd);
  EXPECT_GE(cs.size(), 3u);
  expect_all_pass(cs);
  EXPECT_EQ(cd.v1, cd.v1_newton);
  // u_i^2 + v_i^2 = theta_i
  EXPECT_EQ(reduce_fraction(cd.u1 * cd.u1 + cd.v1 * cd.v1 - cd.theta1), RingElem::constant(cd.ring, 0));
  EXPECT_EQ(reduce_fraction(cd.u2 * cd.u2 + cd.v2 * cd.v2 - cd.theta2), RingElem::constant(cd.ring, 0));
}

INSTANTIATE_TEST_SUITE_P(Pairs, ConformalCases,
                         ::testing::Values(std::make_tuple(2, 2, 3), std::make_tuple(1, 1, 3), std::make_tuple(2, 4, 3),
                                           std::make_tuple(2, 5, 7), std::make_tuple(3, 3, 5)));

TEST(Conformal, NonUnitCoefficientsAreRejected) {
  EXPECT_THROW(solve_conformal(2, 3, 3, 2), DomainError);
  EXPECT_THROW(solve_conformal(5, 1, 5, 2), DomainError);
}

TEST(Conformal, EqualCaseDeltaAndDeterminant) {
  for (i64 p : {3, 5}) {
    ConformalData cd = solve_conformal(2, 2, p, 2);
    expect_all_pass({verify_conformal_delta_at_identity(cd), det_compat(cd)});
  }
  ConformalData un = solve_conformal(2, 4, 3, 2);
  EXPECT_THROW(det_compat(un), DomainError);
  EXPECT_THROW(det_perp_commutator(un), DomainError);
}

TEST(Conformal, SquareRootOfMinusOne) {
  for (i64 p : {5, 13}) {
    CtxPtr B = BaseContext::make(p, 3);
    PadicScalar s = sqrt_minus_one(B);
    EXPECT_EQ(s * s, PadicScalar::from_int(B, -1)) << p;
  }
  CtxPtr G = BaseContext::make(3, 2, FieldSpec::cyclotomic(4));
  PadicScalar i = sqrt_minus_one(G);
  EXPECT_EQ(i * i, PadicScalar::from_int(G, -1));
  EXPECT_THROW(sqrt_minus_one(BaseContext::make(7, 2)), DomainError);
}

TEST(Conformal, DetPerpLiftsDoNotCommute) {
  ConformalData cd = solve_conformal(2, 2, 5, 2);
  DetPerpResult r = det_perp_commutator(cd);
  EXPECT_FALSE(r.commutator.is_zero());
}

TEST(Conformal, HorizontalityGrid) {
  CtxPtr B = BaseContext::make(3, 2);
  std::vector<PadicScalar> grid{PadicScalar::from_int(B, 1), PadicScalar::from_int(B, 2)};
  auto cs = verify_horizontality_grid(grid, 2);
  ASSERT_EQ(cs.size(), 2u);
  expect_all_pass(cs);
}

}  // namespace
}  // namespace alc
