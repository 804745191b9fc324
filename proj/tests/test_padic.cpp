#include <random>

#include <gtest/gtest.h>

#include "alc/errors.hpp"
#include "alc/padic.hpp"

namespace alc {
namespace {

u64 ipow_u(u64 b, int e) {
  u64 r = 1;
  while (e--) r *= b;
  return r;
}

// Smallest x in [0, p^N) with x^2 = a mod p^N and x = 1 mod p.
u64 brute_sqrt_one(u64 a, u64 p, int N) {
  u64 M = ipow_u(p, N);
  for (u64 x = 0; x < M; ++x)
    if ((x * x) % M == a % M && x % p == 1) return x;
  return M;
}

int brute_legendre(i64 a, i64 p) {
  a = ((a % p) + p) % p;
  if (a == 0) return 0;
  for (i64 x = 1; x < p; ++x)
    if ((x * x) % p == a) return 1;
  return -1;
}

PadicScalar random_scalar(const CtxPtr& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> d(0, ctx->modulus() - 1);
  std::vector<u64> c(ctx->degree());
  for (auto& v : c) v = d(rng);
  return PadicScalar::from_raw(ctx, c);
}

TEST(Padic, IntegerArithmeticModPN) {
  CtxPtr c = BaseContext::make(7, 3);
  EXPECT_EQ(c->modulus(), 343u);
  PadicScalar a = PadicScalar::from_int(c, 100), b = PadicScalar::from_int(c, -5);
  EXPECT_EQ((a + b).coeffs()[0], 95u);
  EXPECT_EQ((a * b).coeffs()[0], static_cast<u64>(((100 * -5) % 343 + 343) % 343));
  EXPECT_EQ((a - a).is_zero(), true);
  EXPECT_TRUE(PadicScalar::from_int(c, 3).is_unit());
  EXPECT_FALSE(PadicScalar::from_int(c, 14).is_unit());
}

TEST(Padic, RejectsUnsupportedPrimes) {
  EXPECT_THROW(BaseContext::make(2, 3), DomainError);
  EXPECT_THROW(BaseContext::make(9, 3), DomainError);
  EXPECT_THROW(BaseContext::make(3, 2, FieldSpec::cyclotomic(6)), DomainError);
}

TEST(Padic, InverseAndDivisionByP) {
  CtxPtr c = BaseContext::make(5, 4);
  PadicScalar a = PadicScalar::from_int(c, 7);
  EXPECT_EQ((a * inverse(a)).coeffs()[0], 1u);
  PadicScalar b = PadicScalar::from_int(c, 75);  // 3 * 25
  PadicScalar q = div_p_pow(b, 2);
  EXPECT_EQ(q.precision(), 2);
  EXPECT_EQ(q.coeffs()[0], 3u);
  EXPECT_THROW(div_p_pow(PadicScalar::from_int(c, 7), 1), ExactDivisionFailure);
  PadicScalar up = mul_p_pow(q, 2, 4);
  EXPECT_EQ(up, b);
}

TEST(Padic, SqrtUnitMatchesBruteForce) {
  for (u64 p : {3u, 5u, 7u})
    for (int N = 1; N <= 3; ++N) {
      CtxPtr c = BaseContext::make(static_cast<i64>(p), N);
      for (u64 a = 1; a < ipow_u(p, N); a += p) {
        u64 want = brute_sqrt_one(a, p, N);
        if (want == ipow_u(p, N)) continue;
        EXPECT_EQ(sqrt_unit(PadicScalar::from_int(c, static_cast<i64>(a))).coeffs()[0], want) << p << " " << N << " " << a;
      }
    }
}

TEST(Padic, LegendreMatchesBruteForce) {
  for (i64 p : {3, 5, 7, 11, 13})
    for (i64 a = -20; a <= 20; ++a) {
      if (a % p == 0) {
        EXPECT_THROW(legendre(a, p), DomainError);
        continue;
      }
      EXPECT_EQ(legendre(a, p), brute_legendre(a, p)) << a << " " << p;
    }
}

TEST(Padic, CyclotomicSplitAndInert) {
  // Q(i): 3 is inert (degree 2), 5 splits (degree 1).
  EXPECT_EQ(BaseContext::make(3, 2, FieldSpec::cyclotomic(4))->degree(), 2);
  EXPECT_EQ(BaseContext::make(5, 2, FieldSpec::cyclotomic(4))->degree(), 1);
  for (i64 p : {3, 5}) {
    CtxPtr c = BaseContext::make(p, 3, FieldSpec::cyclotomic(4));
    PadicScalar i = PadicScalar::generator(c);
    EXPECT_EQ(i * i, PadicScalar::from_int(c, -1)) << p;
  }
}

class PadicProperties : public ::testing::TestWithParam<std::tuple<i64, int, int>> {};

TEST_P(PadicProperties, RingAxiomsAndFrobenius) {
  auto [p, N, r] = GetParam();
  CtxPtr c = r == 1 ? BaseContext::make(p, N) : BaseContext::make_extension(p, N, r);
  std::mt19937_64 rng(static_cast<u64>(p * 100 + N * 10 + r));
  for (int t = 0; t < 40; ++t) {
    PadicScalar a = random_scalar(c, rng), b = random_scalar(c, rng), d = random_scalar(c, rng);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * d, a * (b * d));
    EXPECT_EQ(a * (b + d), a * b + a * d);
    // phi is a ring endomorphism lifting x -> x^p.
    EXPECT_EQ(frobenius_base(a * b), frobenius_base(a) * frobenius_base(b));
    EXPECT_EQ(frobenius_base(a + b), frobenius_base(a) + frobenius_base(b));
    EXPECT_EQ(truncate(frobenius_base(a), 1), truncate(a.pow(static_cast<u64>(p)), 1));
    // phi(a) = a^p + p delta(a)
    if (N >= 2) {
      PadicScalar lhs = frobenius_base(a) - a.pow(static_cast<u64>(p));
      EXPECT_EQ(lhs, mul_p_pow(p_derivation_base(a), 1, N));
    }
    if (a.is_unit()) EXPECT_EQ(a * inverse(a), PadicScalar::from_int(c, 1));
  }
}

INSTANTIATE_TEST_SUITE_P(Grid, PadicProperties,
                         ::testing::Values(std::make_tuple(3, 1, 1), std::make_tuple(3, 3, 1), std::make_tuple(5, 3, 2),
                                           std::make_tuple(7, 2, 1), std::make_tuple(7, 3, 3)));

TEST(Padic, CyclotomicFrobeniusIsGalois) {
  // phi(zeta) = zeta^p on Z_p[zeta_m].
  for (auto [p, m] : std::vector<std::pair<i64, int>>{{3, 4}, {5, 4}, {7, 3}, {5, 8}}) {
    CtxPtr c = BaseContext::make(p, 3, FieldSpec::cyclotomic(m));
    PadicScalar z = PadicScalar::generator(c);
    EXPECT_EQ(frobenius_base(z), z.pow(static_cast<u64>(p))) << p << " " << m;
  }
}

TEST(Cyclotomic, ReductionAndGalois) {
  CyclotomicInt i = CyclotomicInt::zeta(4);
  EXPECT_EQ(i * i, CyclotomicInt::from_int(4, -1));
  GaloisElement conj = GaloisElement::make(4, 3);
  CyclotomicInt x = CyclotomicInt::from_coeffs(4, {1, 1});
  EXPECT_EQ(galois_apply(conj, x), CyclotomicInt::from_coeffs(4, {1, -1}));
  EXPECT_EQ(galois_apply(conj.compose(conj), x), x);
}

}  // namespace
}  // namespace alc
