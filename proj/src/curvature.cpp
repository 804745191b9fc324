#include "alc/curvature.hpp"

#include <algorithm>

namespace alc {

namespace {

RingMatrix scalar_pow_matrix(const RingPtr& R1, const ScalarMatrix& q, u64 e) {
  return map_entries(q, [&](const PadicScalar& s) { return RingElem::scalar(R1, truncate(s, 1).pow(e)); });
}

}  // namespace

// phi_i phi_j(x) = phi_i(x)^(p) phi_i(Lambda_j). Modulo p^2 only
// phi_i(Z_j) mod p enters, where Lambda_j = 1 + p Z_j, and every lift agrees
// with x -> x^(p) (Frobenius on coefficients) modulo p.
CurvatureTensor curvature(const Connection& c) {
  if (c.N() < 2) throw PrecisionUnderflow("curvature needs a connection solved at precision >= 2");
  const int n = c.n();
  const u64 p = static_cast<u64>(c.ring()->p());
  RingPtr R2 = c.ring()->with_precision(2);
  RingPtr R1 = c.ring()->with_precision(1);
  SubstitutionMap T = SubstitutionMap::trivial_lift(R1);
  RingMatrix one2 = scalar_identity(R2);
  RingMatrix xp2 = entrywise_pth_power(generic_matrix(R2));

  std::vector<RingMatrix> Wp(n), pTZ(n);
  for (int i = 0; i < n; ++i) {
    RingMatrix L = mat_truncate(c.lambda(i), 2);
    Wp[i] = mat_simplify(entrywise_pth_power(mat_simplify(xp2 * L)));
    RingMatrix Z = mat_div_p_pow(L - one2, 1);
    pTZ[i] = mat_mul_p_pow(mat_simplify(T.apply(Z)), 1, 2);
  }
  auto composite = [&](int i, int j) { return Wp[i] * (one2 + pTZ[j]); };

  CurvatureTensor ct;
  ct.n = n;
  ct.ring = R1;
  ct.Phi.assign(static_cast<size_t>(n) * n, scalar_identity(R1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        ct.Phi[i * n + j] = RingMatrix(n, RingElem(R1));
        continue;
      }
      if (j < i) {
        ct.Phi[i * n + j] = map_entries(ct.Phi[j * n + i], [](const RingElem& e) { return -e; });
        continue;
      }
      ct.Phi[i * n + j] = mat_simplify(mat_div_p_pow(composite(i, j) - composite(j, i), 1));
    }
  for (const auto& P : ct.Phi)
    for (const auto& e : P.a) ct.max_k = std::max(ct.max_k, e.k());

  if (c.metric().gauge_invariant()) {
    RingMatrix xpp = entrywise_pth_power(entrywise_pth_power(generic_matrix(R1)));
    RingMatrix qpp = scalar_pow_matrix(R1, c.metric().q[0], p * p);
    ct.R = riemann_from_phi(ct.Phi, xpp, qpp);
    for (auto& M : ct.R) M = mat_simplify(M);
    ct.ricci = ricci_from_phi(ct.Phi, xpp);
  }
  return ct;
}

std::vector<Check> riemann_and_checks(const CurvatureTensor& ct, const Connection& c) {
  if (!c.metric().gauge_invariant() || ct.R.empty())
    throw DomainError("Riemann congruences need a vertical gauge invariant metric");
  const int n = ct.n;
  std::vector<Check> out{check_phi_antisymmetry(ct.Phi, n)};
  RingMatrix C = mat_simplify(mat_truncate(first_order_C(c)[0], 1));
  out.push_back(check_riemann_mod_p(ct.R, C, n));
  out.push_back(check_riemann_at_identity(c.metric().q[0], [&](int i, int j, int m, int k) {
    return reduce_mod_p_and_x1(ct.R[static_cast<size_t>(i) * n + j](m, k));
  }));
  for (auto& ch : check_riemann_symmetries(ct.R, n)) out.push_back(ch);
  out.push_back(check_ricci_symmetry(ct.ricci));
  out.back().detail += "; max det exponent of Phi " + std::to_string(ct.max_k);
  return out;
}

std::vector<Check> verify_curvature_components(const CurvatureTensor& ct, const Connection& c) {
  const int n = ct.n;
  RingMatrix xinv = mat_simplify(inverse(generic_matrix(ct.ring)));
  std::vector<ScalarMatrix> qinv;
  for (const auto& q : c.metric().q) qinv.push_back(truncate_matrix(inverse(q), 1));
  std::vector<RingMatrix> C;
  for (const auto& M : first_order_C(c)) C.push_back(mat_simplify(mat_truncate(M, 1)));
  std::vector<Check> out{check_phi_mod_p(ct.Phi, xinv, qinv, C)};
  out.push_back(check_phi_at_identity(c.metric().q, [&](int i, int j, int m, int k) {
    return reduce_mod_p_and_x1(ct.Phi[static_cast<size_t>(i) * n + j](m, k));
  }));
  return out;
}

std::vector<Check> conformal_curvature_check(i64 d, i64 p) {
  CtxPtr base = BaseContext::make(p, 2);
  std::vector<i64> q{d, 0, 0, d};
  MetricTuple mt = MetricTuple::from_ints(base, 2, {q, q});
  Connection c = solve(mt, 2);
  CurvatureTensor ct = curvature(c);

  PadicScalar dd = PadicScalar::from_int(base, d);
  PadicScalar e = (p_derivation_base(dd) * inverse(truncate(dd, 1).pow(static_cast<u64>(p)))).pow(static_cast<u64>(p));
  std::vector<std::vector<u64>> want{PadicScalar(e.ctx()).residue(), e.residue(), (-e).residue(),
                                     PadicScalar(e.ctx()).residue()};
  CheckBuilder at1("conformal-curvature-x-1", "Phi_12 = [[0, (dd/d^p)^p], [-(dd/d^p)^p, 0]] mod (p, x-1)");
  const RingMatrix& P = ct.phi(0, 1);
  for (int t = 0; t < 4; ++t) {
    std::vector<u64> have = reduce_mod_p_and_x1(P.a[t]);
    at1.expect(have == want[t], [&] {
      return "entry " + idx({t / 2, t % 2}) + ": got " + std::to_string(have[0]) + ", expected " +
             std::to_string(want[t][0]);
    });
  }
  at1.note("d=" + std::to_string(d) + " p=" + std::to_string(p) + " entry12=" + std::to_string(want[1][0]));

  if (e.is_zero()) return {at1.done()};
  CheckBuilder restr("conformal-curvature-restricted-nonzero", "Phi_12 != 0 mod (p, x11-x22, x12+x21)");
  SubstitutionMap r = restrict_to_gl1c(ct.ring);
  bool nonzero = false;
  for (const auto& e2 : P.a) nonzero = nonzero || !r.apply(e2).is_zero();
  restr.expect(nonzero, [] { return std::string("restriction of Phi_12 vanishes"); });
  return {at1.done(), restr.done()};
}

}  // namespace alc
