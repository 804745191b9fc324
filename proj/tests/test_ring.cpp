#include <random>

#include <gtest/gtest.h>

#include "alc/errors.hpp"
#include "alc/lift.hpp"
#include "alc/pointwise.hpp"

namespace alc {
namespace {

std::vector<PadicScalar> as_point(const ScalarMatrix& x) { return std::vector<PadicScalar>(x.a.begin(), x.a.end()); }

RingElem random_elem(const RingPtr& R, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-4, 4), k(0, 2);
  RingElem f = RingElem::constant(R, c(rng));
  for (int v = 0; v < R->nvars(); ++v) f += RingElem::variable(R, v).scaled(c(rng)) * RingElem::variable(R, (v + 1) % R->nvars());
  return f * RingElem::gen_inverse(R, k(rng));
}

TEST(RingElem, DeterminantIsTheGenerator) {
  RingPtr R = RingContext::gln(BaseContext::make(3, 2), 2);
  RingMatrix x = generic_matrix(R);
  EXPECT_EQ(det(x), RingElem::gen(R));
  EXPECT_EQ(det(x) * invert_unit(det(x)), RingElem::constant(R, 1));
  RingMatrix xi = inverse(x);
  EXPECT_TRUE(mat_equal(mat_simplify(x * xi), identity_like(x.a[0], 2)));
}

TEST(RingElem, FractionsCompareStructurally) {
  RingPtr R = RingContext::gln(BaseContext::make(5, 2), 2);
  RingElem a = RingElem::x(R, 0, 0);
  RingElem b = (a * RingElem::gen(R)) * RingElem::gen_inverse(R, 1);
  EXPECT_EQ(reduce_fraction(b), a);
  EXPECT_EQ(b, a);
  EXPECT_EQ(b.with_k(3), a);
}

TEST(RingElem, PrecisionMoves) {
  RingPtr R = RingContext::gln(BaseContext::make(3, 3), 1);
  RingElem x = RingElem::x(R, 0, 0);
  RingElem f = x.scaled(9) + RingElem::constant(R, 18);
  RingElem g = div_p_pow(f, 2);
  EXPECT_EQ(g.precision(), 1);
  EXPECT_EQ(g, RingElem::x(g.ring(), 0, 0) + RingElem::constant(g.ring(), 2));
  EXPECT_EQ(mul_p_pow(g, 2, 3), f);
  EXPECT_THROW(div_p_pow(x, 1), ExactDivisionFailure);
  EXPECT_TRUE(truncate(f, 2).is_zero());
  EXPECT_EQ(truncate(f + x, 1), truncate(x, 1));
  EXPECT_TRUE(is_zero_mod_p(f));
}

TEST(RingElem, ResidueAtIdentity) {
  RingPtr R = RingContext::gln(BaseContext::make(5, 2), 2);
  RingElem f = RingElem::x(R, 0, 0).scaled(3) + RingElem::x(R, 0, 1).scaled(2) + RingElem::constant(R, 4);
  // x = 1: 3 + 0 + 4 = 7 = 2 mod 5
  EXPECT_EQ(reduce_mod_p_and_x1(f), std::vector<u64>{2});
}

class RingHomProperties : public ::testing::TestWithParam<std::tuple<i64, int, int>> {};

TEST_P(RingHomProperties, EvaluationIsAHomomorphism) {
  auto [p, N, n] = GetParam();
  RingPtr R = RingContext::gln(BaseContext::make(p, N), n);
  CtxPtr pt = point_context(p, N, 2);
  std::mt19937_64 rng(static_cast<u64>(p * 31 + N * 7 + n));
  for (int t = 0; t < 10; ++t) {
    RingElem f = random_elem(R, rng), g = random_elem(R, rng);
    auto x = as_point(random_point(pt, n, rng));
    EXPECT_EQ(evaluate(f + g, x), evaluate(f, x) + evaluate(g, x));
    EXPECT_EQ(evaluate(f * g, x), evaluate(f, x) * evaluate(g, x));
    EXPECT_EQ(f * (g + f), f * g + f * f);
  }
}

INSTANTIATE_TEST_SUITE_P(Grid, RingHomProperties,
                         ::testing::Values(std::make_tuple(3, 2, 1), std::make_tuple(3, 3, 2), std::make_tuple(5, 2, 2),
                                           std::make_tuple(7, 2, 3)));

TEST(FrobeniusLift, TrivialLiftRaisesEntriesAndIsMultiplicative) {
  RingPtr R = RingContext::gln(BaseContext::make(3, 2), 2);
  FrobeniusLift T = FrobeniusLift::trivial(R);
  RingElem x11 = RingElem::x(R, 0, 0);
  EXPECT_EQ(T.apply(x11), x11.pow(3));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 5; ++t) {
    RingElem f = random_elem(R, rng), g = random_elem(R, rng);
    EXPECT_EQ(T.apply(f * g), T.apply(f) * T.apply(g));
    // phi(f) = f^p mod p
    EXPECT_TRUE(is_zero_mod_p(T.apply(f) - f.pow(3)));
  }
}

TEST(FrobeniusLift, LiftFromLambdaMatchesImages) {
  RingPtr R = RingContext::gln(BaseContext::make(5, 2), 2);
  RingMatrix L = identity_like(RingElem::constant(R, 0), 2);
  L(0, 1) = RingElem::x(R, 1, 0).scaled(5);
  FrobeniusLift F = FrobeniusLift::make_lift(L);
  RingMatrix want = entrywise_pth_power(generic_matrix(R)) * L;
  for (int t = 0; t < 4; ++t) EXPECT_EQ(F.images()[t], want.a[t]);
  EXPECT_TRUE(is_zero_mod_p(p_derivation_ring(F, RingElem::constant(R, 1))));
}

TEST(Ideals, ConformalIdealMembership) {
  RingPtr R = RingContext::gln(BaseContext::make(3, 2), 2);
  RingElem a = RingElem::x(R, 0, 0) - RingElem::x(R, 1, 1);
  RingElem b = RingElem::x(R, 0, 1) + RingElem::x(R, 1, 0);
  EXPECT_TRUE(in_ideal(a * RingElem::x(R, 0, 1) + b, IdealKind::ConformalGL2));
  EXPECT_FALSE(in_ideal(RingElem::x(R, 0, 0), IdealKind::ConformalGL2));
  EXPECT_TRUE(in_ideal(RingElem::gen(R) - RingElem::constant(R, 1), IdealKind::CircleGL2));
  RingPtr G = RingContext::gl1c(BaseContext::make(3, 2));
  EXPECT_TRUE(in_ideal(RingElem::gen(G) - RingElem::constant(G, 1), IdealKind::Circle));
}

}  // namespace
}  // namespace alc
