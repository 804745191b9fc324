#pragma once

#include <string>
#include <vector>

#include "alc/solver.hpp"

namespace alc {

// Curvature of a solved connection, reduced mod p:
//   Phi_ij = (phi_i phi_j(x) - phi_j phi_i(x)) / p,
//   R_ij   = x^(p^2)t q^(p^2) Phi_ij,
//   Ricci_ik = sum_j ((x^(p^2))^-1 Phi_ji)_jk.
// All matrices live in the precision-1 ring.
struct CurvatureTensor {
  int n = 0;
  RingPtr ring;                  // precision 1
  std::vector<RingMatrix> Phi;   // index i*n + j
  std::vector<RingMatrix> R;     // empty unless the metric is gauge invariant
  RingMatrix ricci;
  int max_k = 0;                 // largest det exponent among the Phi entries

  const RingMatrix& phi(int i, int j) const { return Phi[static_cast<size_t>(i) * n + j]; }
};

// Requires c.N() >= 2. R and Ricci are filled when all q_i coincide.
CurvatureTensor curvature(const Connection& c);

// ---------------------------------------------------------------------------
// Generic pieces shared by the symbolic and pointwise paths. Inputs are at
// precision 1.

template <class E>
std::vector<Mat<E>> riemann_from_phi(const std::vector<Mat<E>>& Phi, const Mat<E>& xpp, const Mat<E>& qpp) {
  Mat<E> left = transpose(xpp) * qpp;
  std::vector<Mat<E>> R;
  for (const auto& P : Phi) R.push_back(left * P);
  return R;
}

template <class E>
Mat<E> ricci_from_phi(const std::vector<Mat<E>>& Phi, const Mat<E>& xpp) {
  const int n = xpp.n;
  Mat<E> inv = mat_simplify(inverse(xpp));
  Mat<E> out(n, constant_like(xpp.a[0], 0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      Mat<E> Psi = inv * Phi[static_cast<size_t>(j) * n + i];
      for (int k = 0; k < n; ++k) out(i, k) += Psi(j, k);
    }
  return mat_simplify(out);
}

inline std::string idx(std::initializer_list<int> v) {
  std::string s = "(";
  bool first = true;
  for (int x : v) {
    s += (first ? "" : ",") + std::to_string(x + 1);
    first = false;
  }
  return s + ")";
}

template <class E>
Check check_phi_antisymmetry(const std::vector<Mat<E>>& Phi, int n) {
  CheckBuilder cb("curvature-antisymmetry", "Phi_ij = -Phi_ji");
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) {
          E d = Phi[static_cast<size_t>(i) * n + j](m, k) + Phi[static_cast<size_t>(j) * n + i](m, k);
          cb.expect(elem_is_zero(d), [&] { return "Phi" + idx({i, j, m, k}) + " + Phi" + idx({j, i, m, k}) + " = " + elem_str(d); });
        }
  return cb.done();
}

// R_ijmk = 1/2 (C_ik + C_jm - C_jk - C_im)^p mod p, C the common first-order
// matrix of a gauge invariant metric.
template <class E>
Check check_riemann_mod_p(const std::vector<Mat<E>>& R, const Mat<E>& C, int n) {
  CheckBuilder cb("riemann-mod-p", "R_ijmk = (1/2)(C_ik + C_jm - C_jk - C_im)^p mod p");
  const int p = static_cast<int>(elem_p(C.a[0]));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) {
          E rhs = half((C(i, k) + C(j, m) - C(j, k) - C(i, m)).pow(p));
          E d = R[static_cast<size_t>(i) * n + j](m, k) - rhs;
          cb.expect(elem_is_zero(d), [&] { return "R" + idx({i, j, m, k}) + ": difference " + elem_str(d); });
        }
  return cb.done();
}

// The four symmetries of the covariant tensor, mod p.
template <class E>
std::vector<Check> check_riemann_symmetries(const std::vector<Mat<E>>& R, int n) {
  auto r = [&](int i, int j, int m, int k) -> const E& { return R[static_cast<size_t>(i) * n + j](m, k); };
  CheckBuilder last("riemann-last-pair", "R_ijkm = -R_ijmk mod p");
  CheckBuilder first("riemann-first-pair", "R_ijkm = -R_jikm mod p");
  CheckBuilder bianchi("riemann-bianchi", "R_mijk + R_mjki + R_mkij = 0 mod p");
  CheckBuilder exch("riemann-pair-exchange", "R_ijkm = R_kmij mod p");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          E a = r(i, j, k, m) + r(i, j, m, k);
          last.expect(elem_is_zero(a), [&] { return "at " + idx({i, j, k, m}) + ": " + elem_str(a); });
          E b = r(i, j, k, m) + r(j, i, k, m);
          first.expect(elem_is_zero(b), [&] { return "at " + idx({i, j, k, m}) + ": " + elem_str(b); });
          E c = r(m, i, j, k) + r(m, j, k, i) + r(m, k, i, j);
          bianchi.expect(elem_is_zero(c), [&] { return "at " + idx({m, i, j, k}) + ": " + elem_str(c); });
          E d = r(i, j, k, m) - r(k, m, i, j);
          exch.expect(elem_is_zero(d), [&] { return "at " + idx({i, j, k, m}) + ": " + elem_str(d); });
        }
  return {last.done(), first.done(), bianchi.done(), exch.done()};
}

template <class E>
Check check_ricci_symmetry(const Mat<E>& Ric) {
  CheckBuilder cb("ricci-symmetry", "R_ik = R_ki mod p");
  for (int i = 0; i < Ric.n; ++i)
    for (int k = i + 1; k < Ric.n; ++k) {
      E d = Ric(i, k) - Ric(k, i);
      cb.expect(elem_is_zero(d), [&] { return "Ricci" + idx({i, k}) + " - Ricci" + idx({k, i}) + " = " + elem_str(d); });
    }
  return cb.done();
}

// Expected residues at x = 1 of R_ijmk: 1/2 (dq_jk + dq_im - dq_ik - dq_jm)^p.
// `got(i, j, m, k)` returns the residue of R_ijmk at x = 1.
template <class F>
Check check_riemann_at_identity(const ScalarMatrix& q, F got) {
  CheckBuilder cb("riemann-mod-p-x-1", "R_ijmk = (1/2)(dq_jk + dq_im - dq_ik - dq_jm)^p mod (p, x-1)");
  const int n = q.n;
  const CtxPtr& ctx = q.a[0].ctx();
  ScalarMatrix dq = truncate_matrix(p_derivation_matrix(truncate_matrix(q, std::min(2, ctx->N()))), 1);
  const u64 p = static_cast<u64>(ctx->p());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) {
          PadicScalar rhs = half((dq(j, k) + dq(i, m) - dq(i, k) - dq(j, m)).pow(p));
          std::vector<u64> want = rhs.residue(), have = got(i, j, m, k);
          cb.expect(want == have, [&] { return "R" + idx({i, j, m, k}) + " residue mismatch"; });
        }
  return cb.done();
}

// Phi_ijmk against the first-order data of an arbitrary (possibly gauge
// twisted) tuple, mod p: summed over r, s,
//   1/2 (qinv_j^ms)^(p^2) (x^rs)^(p^2) (C_jkr + C_kjr - C_rjk)^p - (same with i).
// qinv are the inverse metrics at precision 1; xinv = x^-1.
template <class E>
Check check_phi_mod_p(const std::vector<Mat<E>>& Phi, const Mat<E>& xinv, const std::vector<ScalarMatrix>& qinv,
                      const std::vector<Mat<E>>& C) {
  CheckBuilder cb("curvature-components-mod-p",
                  "Phi_ijmk = (1/2)(qinv_j^ms)^(p^2)(x^rs)^(p^2)(C_jkr+C_kjr-C_rjk)^p - (i) mod p");
  const int n = xinv.n;
  const E& proto = xinv.a[0];
  const int p = static_cast<int>(elem_p(proto));
  Mat<E> xinv_pp = mat_pth_power(xinv, 2);
  auto term = [&](int j, int m, int k) {
    E s = constant_like(proto, 0);
    for (int r = 0; r < n; ++r) {
      E inner = (C[j](k, r) + C[k](j, r) - C[r](j, k)).pow(p);
      for (int t = 0; t < n; ++t) {
        PadicScalar qs = truncate(qinv[j](m, t), 1).pow(static_cast<u64>(p) * p);
        s += embed_scalar(proto, qs) * xinv_pp(r, t) * inner;
      }
    }
    return half(s);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) {
          E d = Phi[static_cast<size_t>(i) * n + j](m, k) - (term(j, m, k) - term(i, m, k));
          cb.expect(elem_is_zero(simplify(d)), [&] { return "Phi" + idx({i, j, m, k}) + ": difference " + elem_str(d); });
        }
    }
  return cb.done();
}

// The same at x = 1: summed over r,
//   1/2 (qinv_i^mr)^(p^2) (dq_i,kr + dq_k,ir - dq_r,ik)^p - (same with j).
template <class F>
Check check_phi_at_identity(const std::vector<ScalarMatrix>& q, F got) {
  CheckBuilder cb("curvature-components-mod-p-x-1",
                  "Phi_ijmk = (1/2)(qinv_i^mr)^(p^2)(dq_i,kr+dq_k,ir-dq_r,ik)^p - (j) mod (p, x-1)");
  const int n = q[0].n;
  const CtxPtr& ctx = q[0].a[0].ctx();
  const u64 p = static_cast<u64>(ctx->p());
  std::vector<ScalarMatrix> dq, qinv;
  for (const auto& qi : q) {
    dq.push_back(truncate_matrix(p_derivation_matrix(truncate_matrix(qi, std::min(2, ctx->N()))), 1));
    qinv.push_back(truncate_matrix(inverse(qi), 1));
  }
  auto term = [&](int i, int m, int k) {
    PadicScalar s(dq[0].a[0].ctx());
    for (int r = 0; r < n; ++r)
      s += qinv[i](m, r).pow(p * p) * (dq[i](k, r) + dq[k](i, r) - dq[r](i, k)).pow(p);
    return half(s);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) {
          std::vector<u64> want = (term(i, m, k) - term(j, m, k)).residue(), have = got(i, j, m, k);
          cb.expect(want == have, [&] { return "Phi" + idx({i, j, m, k}) + " residue mismatch"; });
        }
    }
  return cb.done();
}

// ---------------------------------------------------------------------------
// Symbolic checks (n = 2 in practice).

// Antisymmetry, Riemann congruences (both ideals), the four symmetries and
// Ricci symmetry. Rejects metrics that are not gauge invariant.
std::vector<Check> riemann_and_checks(const CurvatureTensor& ct, const Connection& c);

// Component congruences for the tuple the connection was solved against
// (which may come from a vertical gauge).
std::vector<Check> verify_curvature_components(const CurvatureTensor& ct, const Connection& c);

// n = 2, q = d 1_2: Phi_12 = [[0, e], [-e, 0]] mod (p, x-1) with
// e = (dd/d^p)^p, and Phi_12 nonzero after restriction to x11 = x22,
// x12 = -x21.
std::vector<Check> conformal_curvature_check(i64 d, i64 p);

}  // namespace alc
