#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "alc/errors.hpp"

namespace alc {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

enum class FieldKind { Rational, Cyclotomic, Unramified };

struct FieldSpec {
  FieldKind kind = FieldKind::Rational;
  int m = 1;             // conductor for the cyclotomic case
  int factor_index = 0;  // which irreducible factor of Phi_m mod p (prime above p)

  static FieldSpec rational() { return {}; }
  static FieldSpec cyclotomic(int m, int factor_index = 0) {
    return {FieldKind::Cyclotomic, m, factor_index};
  }
};

class BaseContext;
using CtxPtr = std::shared_ptr<const BaseContext>;

// The ring O_P truncated mod p^N, presented as (Z/p^N)[t]/(g).
class BaseContext {
 public:
  i64 p() const { return p_; }
  int N() const { return N_; }
  u64 modulus() const { return mod_; }
  int degree() const { return static_cast<int>(g_.size()) - 1; }
  FieldKind kind() const { return spec_.kind; }
  int conductor() const { return spec_.m; }
  const FieldSpec& spec() const { return spec_; }
  // monic, length degree()+1, low to high
  const std::vector<u64>& g() const { return g_; }
  // image of t under the base Frobenius, length degree()
  const std::vector<u64>& frob_image() const { return frob_; }

  CtxPtr with_precision(int N) const;
  // Same field and prime choice; precision may differ.
  bool same_field(const BaseContext& o) const;
  bool same(const BaseContext& o) const { return N_ == o.N_ && same_field(o); }

  // Coefficient-vector kernels (length degree()) used by polynomial code.
  u64 reduce(i64 v) const;
  u64 mulmod(u64 a, u64 b) const;
  void mul_into(const u64* a, const u64* b, u64* out) const;
  // Reduce a raw convolution of length 2d-1 (entries already < modulus) mod g.
  void reduce_conv(u64* conv, u64* out) const;
  void frob_apply(const u64* a, u64* out) const;

  std::string describe() const;

  static CtxPtr make(i64 p, int N, FieldSpec spec = FieldSpec::rational());
  // Unramified extension of Z/p^N of degree r given by a monic lift of an
  // irreducible polynomial mod p; used for evaluation points.
  static CtxPtr make_extension(i64 p, int N, int r);

 private:
  BaseContext() = default;
  i64 p_ = 0;
  int N_ = 0;
  u64 mod_ = 1;
  FieldSpec spec_;
  std::vector<u64> g_;
  std::vector<u64> frob_;
  std::vector<std::vector<u64>> frob_pows_;  // frob_^k mod g for k < d
  // Exact lifts kept at a high precision so lower precisions can be derived.
  std::vector<u64> g_hi_, frob_hi_;
  int N_hi_ = 0;

  static CtxPtr build(i64 p, int N, FieldSpec spec, std::vector<u64> g_hi,
                      std::vector<u64> frob_hi, int N_hi);
};

class PadicScalar {
 public:
  PadicScalar() = default;
  explicit PadicScalar(CtxPtr ctx);
  static PadicScalar from_int(CtxPtr ctx, i64 v);
  static PadicScalar from_coeffs(CtxPtr ctx, const std::vector<i64>& c);
  static PadicScalar from_raw(CtxPtr ctx, std::vector<u64> c);
  static PadicScalar generator(CtxPtr ctx);  // the class of t

  const CtxPtr& ctx() const { return ctx_; }
  const std::vector<u64>& coeffs() const { return c_; }
  int precision() const { return ctx_->N(); }
  bool is_zero() const;
  bool is_unit() const;
  // Residue mod p, low to high coefficients.
  std::vector<u64> residue() const;
  std::string str() const;

  PadicScalar operator+(const PadicScalar& o) const;
  PadicScalar operator-(const PadicScalar& o) const;
  PadicScalar operator-() const;
  PadicScalar operator*(const PadicScalar& o) const;
  PadicScalar& operator+=(const PadicScalar& o) { return *this = *this + o; }
  PadicScalar& operator-=(const PadicScalar& o) { return *this = *this - o; }
  PadicScalar& operator*=(const PadicScalar& o) { return *this = *this * o; }
  bool operator==(const PadicScalar& o) const;
  bool operator!=(const PadicScalar& o) const { return !(*this == o); }
  PadicScalar pow(u64 e) const;
  PadicScalar scaled(i64 k) const;

 private:
  CtxPtr ctx_;
  std::vector<u64> c_;
  void check(const PadicScalar& o) const;
};

PadicScalar frobenius_base(const PadicScalar& a);
// (phi(a) - a^p)/p, returned at precision N-1.
PadicScalar p_derivation_base(const PadicScalar& a);
PadicScalar inverse(const PadicScalar& a);
// Square root congruent to 1 mod p of a unit u = 1 mod p (binomial series).
PadicScalar sqrt_unit(const PadicScalar& u);
int legendre(i64 d, i64 p);

// Exact division by p^nu; result lives at precision N - nu.
PadicScalar div_p_pow(const PadicScalar& a, int nu);
// Multiplication by p^nu, lifting the result to precision target_N (= N + nu at most).
PadicScalar mul_p_pow(const PadicScalar& a, int nu, int target_N);
PadicScalar truncate(const PadicScalar& a, int N);
// Largest k <= N with a = 0 mod p^k.
int valuation(const PadicScalar& a);

// Coefficients of the binomial series (1+X)^{1/2} and (1+X)^{-1/2}, which are
// p-integral for odd p.
std::vector<PadicScalar> half_binomials(const CtxPtr& ctx, int count, bool negative);

// Elementary number theory.
bool is_prime(i64 n);
u64 powmod(u64 b, u64 e, u64 m);
u64 ipow(u64 b, int e);
i64 mod_inverse(i64 a, i64 m);

// Exact element of Z[zeta_m], reduced modulo the m-th cyclotomic polynomial.
class CyclotomicInt {
 public:
  CyclotomicInt() = default;
  explicit CyclotomicInt(int m);
  static CyclotomicInt from_int(int m, i64 v);
  static CyclotomicInt from_coeffs(int m, const std::vector<i64>& c);
  static CyclotomicInt zeta(int m);

  int conductor() const { return m_; }
  const std::vector<i64>& coeffs() const { return c_; }
  bool is_zero() const;
  std::string str() const;

  CyclotomicInt operator+(const CyclotomicInt& o) const;
  CyclotomicInt operator-(const CyclotomicInt& o) const;
  CyclotomicInt operator-() const;
  CyclotomicInt operator*(const CyclotomicInt& o) const;
  bool operator==(const CyclotomicInt& o) const { return m_ == o.m_ && c_ == o.c_; }
  bool operator!=(const CyclotomicInt& o) const { return !(*this == o); }

 private:
  int m_ = 1;
  std::vector<i64> c_;
  static std::vector<i64> reduce_mod_phi(int m, std::vector<i64> v);
  friend CyclotomicInt galois_apply_exp(int a, const CyclotomicInt& x);
};

struct GaloisElement {
  int m = 1;
  int a = 1;
  static GaloisElement make(int m, int a);
  GaloisElement inverse() const;
  GaloisElement compose(const GaloisElement& o) const;
  bool is_identity() const { return a % m == 1 % m; }
};

// Integer coefficients of the m-th cyclotomic polynomial, low to high.
std::vector<i64> cyclotomic_polynomial(int m);
int euler_phi(int m);

CyclotomicInt galois_apply(const GaloisElement& s, const CyclotomicInt& x);
PadicScalar embed(const CyclotomicInt& x, const CtxPtr& ctx);

}  // namespace alc
