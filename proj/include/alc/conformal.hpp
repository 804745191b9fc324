#pragma once

#include <vector>

#include "alc/lift.hpp"
#include "alc/solver.hpp"

namespace alc {

// n = 2 with q_i = d_i 1_2 restricted to G' = Spec O[alpha, beta, (alpha^2+beta^2)^-1].
// The lifts are alpha + beta j -> (alpha^p + beta^p j)(u_i + v_i j), where
// (v_1, v_2) in p O(G')^2 solves
//   x1^2 - 2 eps x2 + eps^2 x2^2 = theta_1 - 1,
//   x1^2 + 2 eps x1 + eps^2 x2^2 = eps^2 (theta_2 - 1),
// eps = phi(d_2/d_1), theta_i = d_i^p (alpha^2+beta^2)^p / (phi(d_i)(alpha^2p + beta^2p)),
// and u_2 = 1 + v_1/eps, u_1 = 1 - eps v_2.
struct ConformalData {
  RingPtr ring;  // G' at precision N
  PadicScalar d1, d2, eps;
  RingElem theta1, theta2;
  RingElem u1, u2, v1, v2;
  RingElem v1_newton;  // the same root found by Newton iteration
};

ConformalData solve_conformal(const PadicScalar& d1, const PadicScalar& d2);
ConformalData solve_conformal(i64 d1, i64 d2, i64 p, int N);

// v = -1/2 + 1/2 (2 theta - 1)^(1/2) for d_1 = d_2.
RingElem equal_case_v(const RingElem& theta);

// phi_1, phi_2 on G'.
std::vector<FrobeniusLift> closed_form_lifts(const ConformalData& cd);

// Restricting the GL_2 solver lifts for (d_1 1_2, d_2 1_2) to G' gives the
// closed-form matrices [[u_i, v_i], [-v_i, u_i]]; also checks the circle
// residuals, u_i^2 + v_i^2 = theta_i and, for d_1 = d_2, the equal-case series.
std::vector<Check> verify_conformal(const ConformalData& cd);

// d_1 = d_2 = d: delta_i of [[alpha, beta], [-beta, alpha]] is
// -1/2 (dd/d^p) [[1, +-1], [-+1, 1]] mod (p, alpha - 1, beta).
Check verify_conformal_delta_at_identity(const ConformalData& cd);

// d_1 = d_2 = d: phi_i(alpha^2 + beta^2) = (d^p/phi(d)) (alpha^2 + beta^2)^p.
Check det_compat(const ConformalData& cd);

struct DetPerpResult {
  PadicScalar sqrt_minus_one;
  RingElem phi1_s, phi2_s;  // phi_i(s), s = (alpha + i beta)/(alpha - i beta)
  RingElem commutator;      // phi_1 phi_2 (s) - phi_2 phi_1 (s)
};
// sqrt(-1) from the base: t for Q(i), otherwise the Hensel lift of the
// smaller positive square root of -1 mod p (p = 1 mod 4).
PadicScalar sqrt_minus_one(const CtxPtr& base);
DetPerpResult det_perp_commutator(const ConformalData& cd);

// Horizontality of the GL_2 solver lifts for q_i = d_i 1_2: G' always, and
// U_1^c exactly when dd_1 = dd_2 = 0. Each d in `grid` is paired with each.
std::vector<Check> verify_horizontality_grid(const std::vector<PadicScalar>& grid, int N);

}  // namespace alc
