#pragma once

#include <random>
#include <vector>

#include "alc/curvature.hpp"

namespace alc {

// Evaluation of the solver at points of GL_n over an unramified extension
// W_N(F_{p^r}). Every step of the iteration is a polynomial operation in x
// with coefficients in Z_p, so solving at a point equals evaluating the
// symbolic solution there. Only rational metrics are supported.

CtxPtr point_context(i64 p, int N, int r = 2);
// Uniformly random matrix with unit determinant.
ScalarMatrix random_point(const CtxPtr& ctx, int n, std::mt19937_64& rng);
ScalarMatrix identity_point(const CtxPtr& ctx, int n);

Frame<PadicScalar> solve_point(const ScalarMatrix& x, const MetricTuple& q);
// W_i(x) = x^(p) Lambda_i(x) for every i.
std::vector<ScalarMatrix> lift_images(const Frame<PadicScalar>& F);
// Phi_ij(x0) = (W_j(W_i(x0)) - W_i(W_j(x0)))/p, index i*n + j, precision N-1.
std::vector<ScalarMatrix> curvature_at(const ScalarMatrix& x0, const MetricTuple& q);

struct PointwiseOptions {
  int points = 50;
  u64 seed = 1;
  int degree = 2;  // residue field F_{p^degree}
};

// Combines per-point results of identically named checks; the first failing
// point provides the witness.
class PointAggregator {
 public:
  void add(int point, const std::vector<Check>& cs);
  std::vector<Check> done(int points) const;

 private:
  std::vector<Check> acc_;
};

// Metric, torsion, Christoffel symmetry, precision stability (solve at N+1
// then truncate) and the mod-p Christoffel congruence at random points, plus
// the mod (p, x-1) congruence at x = 1.
std::vector<Check> verify_connection_pointwise(const MetricTuple& q, int N, const PointwiseOptions& opt);

// Riemann congruences, the four symmetries, Ricci symmetry and curvature
// antisymmetry at random points (gauge invariant metric), plus the mod
// (p, x-1) congruences at x = 1.
std::vector<Check> verify_curvature_pointwise(const MetricTuple& q, const PointwiseOptions& opt);

}  // namespace alc
