#include <random>

#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include "alc/errors.hpp"
#include "alc/mixed.hpp"

namespace alc {
namespace {

using boost::multiprecision::cpp_rational;

void expect_all_pass(const std::vector<Check>& cs) {
  for (const auto& c : cs) EXPECT_TRUE(c.pass) << c.name << ": " << c.witness;
}

// Determinant of the z-system by rational elimination, rows written out from
// (y_i^t z_i + z_i^t y_i)_jk for j <= k, then z_ikj - z_jki for i < j.
cpp_rational oracle_d(int n, const std::vector<IntMatrix>& y) {
  const int m = n * n * n;
  auto var = [&](int i, int j, int k) { return (i * n + j) * n + k; };
  std::vector<std::vector<cpp_rational>> A;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        std::vector<cpp_rational> row(m);
        for (int l = 0; l < n; ++l) {
          row[var(i, l, k)] += cpp_rational(y[i][l][j]);
          row[var(i, l, j)] += cpp_rational(y[i][l][k]);
        }
        A.push_back(row);
      }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        std::vector<cpp_rational> row(m);
        row[var(i, k, j)] += 1;
        row[var(j, k, i)] -= 1;
        A.push_back(row);
      }
  cpp_rational det = 1;
  for (int c = 0; c < m; ++c) {
    int piv = -1;
    for (int r = c; r < m; ++r)
      if (A[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(A[piv], A[c]);
      det = -det;
    }
    det *= A[c][c];
    for (int r = c + 1; r < m; ++r) {
      if (A[r][c] == 0) continue;
      cpp_rational f = A[r][c] / A[c][c];
      for (int t = c; t < m; ++t) A[r][t] -= f * A[c][t];
    }
  }
  return det;
}

std::vector<IntMatrix> random_y(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  std::vector<IntMatrix> y(n, IntMatrix(n, std::vector<BigInt>(n)));
  for (auto& yi : y)
    for (auto& row : yi)
      for (auto& v : row) v = d(rng);
  return y;
}

std::vector<IntMatrix> identity_y(int n) {
  std::vector<IntMatrix> y(n, IntMatrix(n, std::vector<BigInt>(n)));
  for (auto& yi : y)
    for (int a = 0; a < n; ++a) yi[a][a] = 1;
  return y;
}

TEST(DDeterminant, MatchesRationalElimination) {
  std::mt19937_64 rng(17);
  for (int n : {2, 3})
    for (int t = 0; t < 6; ++t) {
      auto y = random_y(n, rng);
      EXPECT_EQ(cpp_rational(d_determinant(n, y)), oracle_d(n, y)) << n;
      EXPECT_EQ(bareiss_determinant(d_system(n, y)), d_determinant(n, y));
    }
  for (int n : {2, 3}) EXPECT_EQ(cpp_rational(d_determinant(n, identity_y(n))), oracle_d(n, identity_y(n)));
}

TEST(DDeterminant, FactoredFormHasConstantRatio) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    auto y = random_y(2, rng);
    BigInt f = d_factored_n2(y);
    EXPECT_EQ(d_determinant(2, y), f * 16);
  }
}

TEST(DDeterminant, BareissOnSmallMatrices) {
  IntMatrix m{{2, 1}, {7, 4}};
  EXPECT_EQ(bareiss_determinant(m), 1);
  IntMatrix s{{0, 1, 0}, {1, 0, 0}, {0, 0, 5}};
  EXPECT_EQ(bareiss_determinant(s), -5);
}

TEST(MPoly, RingIdentities) {
  MPoly a = MPoly::variable(2, 0), b = MPoly::variable(2, 1);
  MPoly f = a * a + b.scaled(3) - MPoly::constant(2, 1);
  EXPECT_EQ((a + b).pow(2), a * a + (a * b).scaled(2) + b * b);
  EXPECT_EQ(f - f, MPoly(2));
  EXPECT_EQ(f.total_degree(), 2);
  EXPECT_EQ(f.degree_in(1), 1);
  EXPECT_EQ(f.evaluate({BigInt(2), BigInt(5)}), BigInt(18));
  BigInt two(2);
  EXPECT_EQ(f.substitute({&two, nullptr}), b.scaled(3) + MPoly::constant(2, 3));
  EXPECT_TRUE(f.scaled(6).divisible_by(3));
  EXPECT_EQ(f.scaled(6).divided_exactly(6), f);
  EXPECT_THROW(f.divided_exactly(3), ExactDivisionFailure);
}

TEST(Theta, VMatrixTraceAndDeterminant) {
  BasisPtr B = alpha_beta_basis({3});
  for (i64 d : {1, 2}) {
    ThetaV tv = theta_and_vmatrix(d, 3, B);
    EXPECT_EQ(tv.V.trace(), RationalFunc::constant(B, -1));
    RationalFunc det = tv.V.a[0] * tv.V.a[3] - tv.V.a[1] * tv.V.a[2];
    EXPECT_EQ(det, -(tv.theta - RationalFunc::constant(B, 1)).half());
  }
  // d = 1: theta = (alpha^2 + beta^2)^3 / (alpha^6 + beta^6)
  ThetaV tv = theta_and_vmatrix(1, 3, B);
  MPoly a = MPoly::variable(2, 0), b = MPoly::variable(2, 1);
  RationalFunc want = RationalFunc(B, (a * a + b * b).pow(3)) * RationalFunc::inverse_gen(B, 0);
  EXPECT_EQ(tv.theta, want);
  EXPECT_THROW(theta_and_vmatrix(3, 3, B), DomainError);
  EXPECT_THROW(d_determinant(1, identity_y(1)), DomainError);
}

TEST(QuadExt, PowersAgreeWithRegularMatrix) {
  BasisPtr B = alpha_beta_basis({3});
  ThetaV tv = theta_and_vmatrix(2, 3, B);
  auto c = std::make_shared<const RationalFunc>((tv.theta - RationalFunc::constant(B, 1)).half());
  MPoly a = MPoly::variable(2, 0), b = MPoly::variable(2, 1);
  QuadExtElem z(c, RationalFunc(B, a), RationalFunc(B, b - a));
  QuadExtElem v = QuadExtElem::v(c);
  // v^2 = c - v
  EXPECT_EQ(v * v, QuadExtElem(c, *c, RationalFunc::constant(B, -1)));
  for (int e : {1, 2, 3, 5}) EXPECT_EQ(z.pow(e).trace(), rmat_pow(regular_matrix(z, tv.V), e).trace()) << e;
  EXPECT_EQ(z.pow(5), z.pow(2) * z.pow(3));
}

class StarCurvatureGrid : public ::testing::TestWithParam<std::tuple<i64, i64, i64>> {};

TEST_P(StarCurvatureGrid, CongruencesHold) {
  auto [d, p, pp] = GetParam();
  StarCurvature s = star_curvature_traces(d, p, pp);
  EXPECT_TRUE(s.traces_agree);
  auto cs = verify_star_curvature(s);
  EXPECT_GE(cs.size(), 3u);
  expect_all_pass(cs);
}

INSTANTIATE_TEST_SUITE_P(Primes, StarCurvatureGrid,
                         ::testing::Values(std::make_tuple(1, 3, 5), std::make_tuple(2, 3, 5), std::make_tuple(-1, 5, 3),
                                           std::make_tuple(2, 3, 3), std::make_tuple(1, 5, 7)));

TEST(StarCurvature, Target) {
  MPoly a = MPoly::variable(2, 0), b = MPoly::variable(2, 1);
  EXPECT_EQ(star_target(15), (a.pow(15) + b.pow(15)).scaled(-2));
}

TEST(Moebius, LiftsSatisfyTheirRelations) {
  for (auto [d, p] : std::vector<std::pair<i64, i64>>{{1, 3}, {2, 3}, {1, 5}}) {
    MoebiusLifts m = moebius_lifts(d, p);
    expect_all_pass(verify_moebius(m));
  }
  EXPECT_EQ(moebius_lifts(1, 3).degree_num, 3);
}

TEST(Etale, SectionAtIdentity) {
  for (i64 p : {3, 5, 7}) {
    EtalePresentation e = etale_presentation({{1, 0, 0, 2}, {1, 1, 1, 2}}, p);
    EXPECT_EQ(e.n, 2);
    EXPECT_EQ(e.metric_gens.size(), 6u);
    EXPECT_EQ(e.torsion_gens.size(), 2u);
    expect_all_pass({section_check(e)});
  }
  EXPECT_THROW(etale_presentation({{1, 2, 2, 4}, {1, 0, 0, 1}}, 3), NotAUnit);
  EXPECT_THROW(etale_presentation({{1, 2, 0, 4}, {1, 0, 0, 1}}, 3), DomainError);
}

TEST(TracePower, HoldsModP) {
  for (i64 p : {3, 5, 7}) expect_all_pass({verify_trace_power(p, 5, 9)});
}

}  // namespace
}  // namespace alc
