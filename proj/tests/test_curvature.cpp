#include <random>

#include <gtest/gtest.h>

#include "alc/curvature.hpp"
#include "alc/errors.hpp"
#include "alc/pointwise.hpp"
#include "support.hpp"

namespace alc {
namespace {

void expect_all_pass(const std::vector<Check>& cs) {
  for (const auto& c : cs) EXPECT_TRUE(c.pass) << c.name << ": " << c.witness;
}

bool has_check(const std::vector<Check>& cs, const std::string& name) {
  for (const auto& c : cs)
    if (c.name == name) return true;
  return false;
}

TEST(Curvature, DiagonalMetricRiemannAndSymmetries) {
  CtxPtr B = BaseContext::make(3, 2);
  Connection c = solve(MetricTuple::from_ints(B, 2, {{1, 0, 0, 2}, {1, 0, 0, 2}}), 2);
  CurvatureTensor ct = curvature(c);
  EXPECT_EQ(ct.Phi.size(), 4u);
  EXPECT_EQ(ct.R.size(), 4u);
  auto cs = riemann_and_checks(ct, c);
  for (const char* name : {"curvature-antisymmetry", "riemann-mod-p", "riemann-last-pair", "riemann-first-pair",
                           "riemann-bianchi", "riemann-pair-exchange", "ricci-symmetry"})
    EXPECT_TRUE(has_check(cs, name)) << name;
  expect_all_pass(cs);
  expect_all_pass(verify_curvature_components(ct, c));
}

TEST(Curvature, NeedsPrecisionTwo) {
  CtxPtr B = BaseContext::make(3, 1);
  Connection c = solve(MetricTuple::from_ints(B, 1, {{2}}), 1);
  EXPECT_THROW(curvature(c), PrecisionUnderflow);
}

TEST(Curvature, NonInvariantMetricIsRejectedByRiemannChecks) {
  CtxPtr B = BaseContext::make(3, 2);
  Connection c = solve(MetricTuple::from_ints(B, 2, {{1, 0, 0, 2}, {2, 0, 0, 1}}), 2);
  CurvatureTensor ct = curvature(c);
  EXPECT_TRUE(ct.R.empty());
  EXPECT_THROW(riemann_and_checks(ct, c), DomainError);
  expect_all_pass({check_phi_antisymmetry(ct.Phi, 2)});
  expect_all_pass(verify_curvature_components(ct, c));
}

TEST(Curvature, SymbolicAgreesWithPointwise) {
  CtxPtr B = BaseContext::make(3, 2);
  MetricTuple q = MetricTuple::from_ints(B, 2, {{1, 0, 0, 2}, {1, 0, 0, 2}});
  CurvatureTensor ct = curvature(solve(q, 2));
  CtxPtr pc = point_context(3, 2, 2);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 4; ++t) {
    ScalarMatrix x = random_point(pc, 2, rng);
    std::vector<ScalarMatrix> Phi = curvature_at(x, q);
    ScalarMatrix x1 = mat_truncate(x, 1);
    std::vector<PadicScalar> pt(x1.a.begin(), x1.a.end());
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int e = 0; e < 4; ++e) EXPECT_EQ(evaluate(ct.phi(i, j).a[e], pt), Phi[i * 2 + j].a[e]);
  }
}

TEST(Curvature, ConformalEntryAtIdentity) {
  // d = 2, p = 3: delta(2) = (2 - 2^3)/3 = -2 and 2^3 = 2 mod 3, so
  // e = (-2/2)^3 = -1 = 2 mod 3.
  CtxPtr B = BaseContext::make(3, 2);
  Connection c = solve(MetricTuple::from_ints(B, 2, {{2, 0, 0, 2}, {2, 0, 0, 2}}), 2);
  CurvatureTensor ct = curvature(c);
  EXPECT_EQ(reduce_mod_p_and_x1(ct.phi(0, 1)(0, 1)), std::vector<u64>{2});
  EXPECT_EQ(reduce_mod_p_and_x1(ct.phi(0, 1)(1, 0)), std::vector<u64>{1});
  EXPECT_EQ(reduce_mod_p_and_x1(ct.phi(0, 1)(0, 0)), std::vector<u64>{0});
  expect_all_pass(conformal_curvature_check(2, 3));
}

TEST(Curvature, PointwiseThreeDimensional) {
  CtxPtr B = BaseContext::make(3, 2);
  MetricTuple q = MetricTuple::from_ints(B, 3, std::vector<std::vector<i64>>(3, {1, 0, 0, 0, 2, 0, 0, 0, 5}));
  PointwiseOptions o;
  o.points = 8;
  auto cs = verify_curvature_pointwise(q, o);
  EXPECT_TRUE(has_check(cs, "riemann-mod-p-x-1"));
  expect_all_pass(cs);
}

}  // namespace
}  // namespace alc
