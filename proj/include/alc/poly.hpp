#pragma once

#include <string>
#include <vector>

#include "alc/padic.hpp"

namespace alc {

// Packed exponent vector: up to kMaxVars variables with 12-bit fields and the
// total degree in the top 20 bits, so that integer comparison of two packed
// monomials is graded lexicographic order (variable 0 largest).
using Mono = unsigned __int128;
constexpr int kMaxVars = 9;
constexpr int kExpBits = 12;
constexpr int kMaxExp = (1 << (kExpBits - 1)) - 1;

Mono mono_make(const std::vector<int>& e);
int mono_exp(Mono m, int v);
int mono_degree(Mono m);
Mono mono_mul(Mono a, Mono b);
bool mono_divides(Mono a, Mono b);  // a | b
Mono mono_div(Mono b, Mono a);
std::vector<int> mono_exps(Mono m, int nvars);

// Sparse polynomial with coefficients in the base ring; terms sorted by
// decreasing monomial, no zero coefficients. Coefficient blocks have length
// d = degree of the base ring presentation.
struct Poly {
  std::vector<Mono> mono;
  std::vector<u64> coef;

  size_t size() const { return mono.size(); }
  bool empty() const { return mono.empty(); }
  const u64* c(size_t i, int d) const { return coef.data() + i * d; }
};

Poly poly_constant(const BaseContext& R, const u64* c);
Poly poly_int(const BaseContext& R, i64 v);
Poly poly_scalar(const PadicScalar& s);
Poly poly_var(const BaseContext& R, int v);
Poly poly_term(const BaseContext& R, Mono m, const u64* c);

Poly poly_add(const BaseContext& R, const Poly& f, const Poly& g);
Poly poly_sub(const BaseContext& R, const Poly& f, const Poly& g);
Poly poly_neg(const BaseContext& R, const Poly& f);
Poly poly_mul(const BaseContext& R, const Poly& f, const Poly& g);
Poly poly_pow(const BaseContext& R, const Poly& f, int e);
Poly poly_scale(const BaseContext& R, const Poly& f, const u64* c);
Poly poly_scale_int(const BaseContext& R, const Poly& f, i64 k);
Poly poly_mono_mul(const BaseContext& R, const Poly& f, Mono m);
Poly poly_frobenius_coeffs(const BaseContext& R, const Poly& f);

// Precision changes: reduce coefficients into `to` (lower modulus), exact
// division by p^nu, multiplication by p^nu into a higher modulus.
Poly poly_truncate(const BaseContext& to, const Poly& f);
Poly poly_div_p_pow(const BaseContext& from, const BaseContext& to, const Poly& f, int nu);
Poly poly_mul_p_pow(const BaseContext& from, const BaseContext& to, const Poly& f, int nu);
bool poly_divisible_by_p_pow(const BaseContext& R, const Poly& f, int nu);
// Coefficients mod p (residue field), zero terms dropped.
Poly poly_residue(const BaseContext& R, const Poly& f);

// Exact division by g whose leading coefficient is 1; returns false when g
// does not divide f. Coefficient arithmetic is carried out in R.
bool poly_divexact(const BaseContext& R, const Poly& f, const Poly& g, Poly* q);

bool poly_equal(const Poly& f, const Poly& g);
// Largest exponent of each variable occurring in f.
std::vector<u64> poly_max_exps(const Poly& f, int nvars);

std::string poly_to_string(const BaseContext& R, const Poly& f, const std::vector<std::string>& names,
                           size_t max_terms = 0);

}  // namespace alc
