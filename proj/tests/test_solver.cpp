#include <gtest/gtest.h>

#include "alc/errors.hpp"
#include "alc/pointwise.hpp"
#include "alc/solver.hpp"
#include "support.hpp"

namespace alc {
namespace {

using testing_support::random_metric_tuple;

void expect_all_pass(const std::vector<Check>& cs) {
  for (const auto& c : cs) EXPECT_TRUE(c.pass) << c.name << ": " << c.witness;
}

// The square root of d^(p-1) mod p^N that is 1 mod p, by search.
i64 brute_n1(i64 d, i64 p, int N) {
  i64 M = 1;
  for (int i = 0; i < N; ++i) M *= p;
  i64 t = 1;
  for (i64 i = 0; i < p - 1; ++i) t = (t * (((d % M) + M) % M)) % M;
  for (i64 x = 0; x < M; ++x)
    if ((x * x) % M == t && x % p == 1) return x;
  return -1;
}

TEST(Solver, OneDimensionalValueAtSeven) {
  CtxPtr B = BaseContext::make(7, 2);
  Connection c = solve(MetricTuple::from_ints(B, 1, {{2}}), 2);
  EXPECT_EQ(brute_n1(2, 7, 2), 8);
  EXPECT_EQ(c.lambda(0)(0, 0), RingElem::constant(c.ring(), 8));
}

TEST(Solver, OneDimensionalClosedFormForRandomUnits) {
  std::mt19937_64 rng(11);
  for (i64 p : {3, 5, 7}) {
    CtxPtr B = BaseContext::make(p, 3);
    std::uniform_int_distribution<i64> d(-200, 200);
    for (int t = 0; t < 8; ++t) {
      i64 v = d(rng);
      if (v % p == 0) continue;
      Connection c = solve(MetricTuple::from_ints(B, 1, {{v}}), 3);
      EXPECT_EQ(c.lambda(0)(0, 0), RingElem::constant(c.ring(), brute_n1(v, p, 3))) << v << " " << p;
      PadicScalar dv = PadicScalar::from_int(B, v);
      EXPECT_EQ(n1_closed_form(dv), n1_legendre_form(dv));
    }
  }
}

class SolverGrid : public ::testing::TestWithParam<std::tuple<int, i64>> {};

TEST_P(SolverGrid, MetricTorsionAndChristoffelCongruences) {
  auto [n, p] = GetParam();
  std::mt19937_64 rng(static_cast<u64>(100 * n + p));
  for (int t = 0; t < 2; ++t) {
    CtxPtr B = BaseContext::make(p, 3);
    MetricTuple q = MetricTuple::from_ints(B, n, random_metric_tuple(n, p, rng));
    Connection c = solve(q, 3);
    expect_all_pass(verify_connection(c));
    expect_all_pass(verify_congruence_christoffel(c));
    EXPECT_EQ(c.iterations(), 2);
  }
}

INSTANTIATE_TEST_SUITE_P(Small, SolverGrid,
                         ::testing::Values(std::make_tuple(1, 3), std::make_tuple(1, 7), std::make_tuple(2, 3),
                                           std::make_tuple(2, 5)));

TEST(Solver, PrecisionStability) {
  std::mt19937_64 rng(3);
  CtxPtr B = BaseContext::make(3, 3);
  MetricTuple q = MetricTuple::from_ints(B, 2, random_metric_tuple(2, 3, rng));
  Connection lo = solve(q, 3), hi = solve(q, 4);
  for (int i = 0; i < 2; ++i)
    for (int t = 0; t < 4; ++t) EXPECT_EQ(truncate(hi.lambda(i).a[t], 3), lo.lambda(i).a[t]);
}

TEST(Solver, PointwiseEqualsSymbolicEvaluation) {
  std::mt19937_64 rng(21);
  CtxPtr B = BaseContext::make(5, 3);
  MetricTuple q = MetricTuple::from_ints(B, 2, random_metric_tuple(2, 5, rng));
  Connection c = solve(q, 3);
  CtxPtr pc = point_context(5, 3, 2);
  for (int t = 0; t < 5; ++t) {
    ScalarMatrix x = random_point(pc, 2, rng);
    Frame<PadicScalar> F = solve_point(x, q);
    std::vector<PadicScalar> pt(x.a.begin(), x.a.end());
    for (int i = 0; i < 2; ++i)
      for (int e = 0; e < 4; ++e) EXPECT_EQ(evaluate(c.lambda(i).a[e], pt), F.Lambda[i].a[e]);
  }
}

TEST(Solver, PointwiseThreeDimensional) {
  std::mt19937_64 rng(8);
  CtxPtr B = BaseContext::make(3, 3);
  MetricTuple q = MetricTuple::from_ints(B, 3, random_metric_tuple(3, 3, rng));
  PointwiseOptions o;
  o.points = 10;
  expect_all_pass(verify_connection_pointwise(q, 3, o));
}

TEST(Solver, DeterminantOfLambda) {
  CtxPtr B = BaseContext::make(5, 2);
  Connection diag = solve(MetricTuple::from_ints(B, 2, {{1, 0, 0, 2}, {3, 0, 0, 2}}), 2);
  expect_all_pass(verify_det_lambda(diag, Situation::Torus));
  expect_all_pass(verify_det_lambda(diag, Situation::Center));
  Connection full = solve(MetricTuple::from_ints(B, 2, {{2, 1, 1, 2}, {2, 1, 1, 2}}), 2);
  expect_all_pass(verify_det_lambda(full, Situation::Center));
  EXPECT_THROW(verify_det_lambda(full, Situation::Torus), DomainError);
}

TEST(Solver, VerticalGaugeOverGaussianIntegers) {
  auto ci = [](std::vector<i64> c) { return CyclotomicInt::from_coeffs(4, c); };
  std::vector<std::vector<CyclotomicInt>> q{{ci({2}), ci({1, 1})}, {ci({1, 1}), ci({3})}};
  CtxPtr B3 = BaseContext::make(3, 2, FieldSpec::cyclotomic(4));
  auto cs = verify_vertical_congruences(q, VerticalGauge{4, {1, 3}}, B3);
  EXPECT_GE(cs.size(), 4u);
  expect_all_pass(cs);
  EXPECT_FALSE(vertical_setup(q, VerticalGauge{4, {1, 3}}, B3).gauge_invariant());
  // det q = 6 - 2i and its conjugate multiply to 40, so at the split prime 5
  // one of the two twisted metrics is singular for either prime above 5.
  for (int f : {0, 1})
    EXPECT_THROW(vertical_setup(q, VerticalGauge{4, {1, 3}}, BaseContext::make(5, 2, FieldSpec::cyclotomic(4, f))),
                 NotAUnit);
  EXPECT_THROW(vertical_setup(q, VerticalGauge{4, {3, 1}}, BaseContext::make(3, 2, FieldSpec::cyclotomic(4))),
               DomainError);
}

TEST(Solver, RejectsBadInput) {
  CtxPtr B = BaseContext::make(3, 2);
  EXPECT_THROW(solve(MetricTuple::from_ints(B, 2, {{1, 0, 0, 3}, {1, 0, 0, 1}}), 2), NotAUnit);
  EXPECT_THROW(MetricTuple::from_ints(B, 2, {{1, 2, 0, 1}, {1, 0, 0, 1}}), DomainError);
}

}  // namespace
}  // namespace alc
