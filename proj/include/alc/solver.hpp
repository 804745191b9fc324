#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "alc/check.hpp"
#include "alc/lift.hpp"
#include "alc/ring.hpp"

namespace alc {

// q_1, ..., q_n: symmetric matrices over the base ring with unit determinant.
struct MetricTuple {
  CtxPtr base;
  int n = 0;
  std::vector<ScalarMatrix> q;
  // Exact entries (row-major per matrix) when known; lets the tuple be
  // re-embedded at any precision.
  std::vector<std::vector<CyclotomicInt>> exact;

  static MetricTuple make(std::vector<ScalarMatrix> q);
  static MetricTuple from_exact(const CtxPtr& base, int n, std::vector<std::vector<CyclotomicInt>> exact);
  static MetricTuple from_ints(const CtxPtr& base, int n, const std::vector<std::vector<i64>>& q);
  // (q, ..., q)
  static MetricTuple uniform(const ScalarMatrix& q);
  MetricTuple with_precision(int N) const;
  bool gauge_invariant() const;
};

ScalarMatrix scalar_matrix_from_ints(const CtxPtr& base, int n, const std::vector<i64>& rowmajor);
ScalarMatrix frobenius_matrix(const ScalarMatrix& q);
ScalarMatrix p_derivation_matrix(const ScalarMatrix& q);  // entrywise delta, precision N-1
ScalarMatrix truncate_matrix(const ScalarMatrix& q, int N);

// ---------------------------------------------------------------------------
// Element adapters for the generic algorithms below.

inline RingElem embed_scalar(const RingElem& proto, const PadicScalar& s) {
  return RingElem::scalar(proto.ring(), truncate(s, proto.precision()));
}
PadicScalar embed_scalar(const PadicScalar& proto, const PadicScalar& s);
inline u64 elem_modulus(const RingElem& e) { return e.ring()->B().modulus(); }
inline u64 elem_modulus(const PadicScalar& e) { return e.ctx()->modulus(); }
inline i64 elem_p(const RingElem& e) { return e.ring()->p(); }
inline i64 elem_p(const PadicScalar& e) { return e.ctx()->p(); }
inline bool elem_zero_mod_p(const RingElem& e) { return is_zero_mod_p(e); }
inline bool elem_zero_mod_p(const PadicScalar& e) { return e.is_zero() || valuation(e) >= 1; }
inline std::string elem_str(const RingElem& e) { return e.str(10); }
inline RingElem simplify(const RingElem& e) { return reduce_fraction(e); }
inline PadicScalar simplify(const PadicScalar& e) { return e; }
inline std::string elem_str(const PadicScalar& e) { return e.str(); }

template <class E>
E half(const E& e) {
  u64 M = elem_modulus(e);
  return e.scaled(static_cast<i64>((M + 1) / 2));
}

template <class E>
Mat<E> mat_embed(const E& proto, const ScalarMatrix& q) {
  return map_entries(q, [&](const PadicScalar& s) { return embed_scalar(proto, s); });
}

template <class E>
Mat<E> mat_div_p_pow(const Mat<E>& M, int nu) {
  return map_entries(M, [nu](const E& e) { return div_p_pow(e, nu); });
}

template <class E>
Mat<E> mat_mul_p_pow(const Mat<E>& M, int nu, int N) {
  return map_entries(M, [nu, N](const E& e) { return mul_p_pow(e, nu, N); });
}

template <class E>
Mat<E> mat_truncate(const Mat<E>& M, int N) {
  return map_entries(M, [N](const E& e) { return truncate(e, N); });
}

template <class E>
Mat<E> mat_simplify(const Mat<E>& M) {
  return map_entries(M, [](const E& e) { return simplify(e); });
}

template <class E>
Mat<E> mat_pth_power(const Mat<E>& M, int times = 1) {
  return map_entries(M, [times](const E& e) {
    E r = e;
    for (int t = 0; t < times; ++t) r = r.pow(static_cast<int>(elem_p(e)));
    return r;
  });
}

// ---------------------------------------------------------------------------
// The metric/torsion-free iteration. Everything lives at one precision N; the
// data x may be the generic matrix (symbolic) or a point.

template <class E>
struct Frame {
  int n = 0;
  int N = 0;
  Mat<E> x, xp;  // x and x^(p)
  std::vector<Mat<E>> A, B, Ainv, Lambda;
  int iterations = 0;
};

template <class E>
Frame<E> build_frame(const Mat<E>& x, const MetricTuple& q) {
  Frame<E> F;
  F.n = x.n;
  F.N = x.a[0].precision();
  F.x = x;
  F.xp = mat_pth_power(x);
  const E& proto = x.a[0];
  MetricTuple qq = q.with_precision(F.N);
  for (int i = 0; i < F.n; ++i) {
    Mat<E> phq = mat_embed(proto, frobenius_matrix(qq.q[i]));
    Mat<E> qi = mat_embed(proto, qq.q[i]);
    F.A.push_back(transpose(F.xp) * phq * F.xp);
    F.B.push_back(mat_pth_power(transpose(x) * qi * x));
  }
  return F;
}

// Runs the N-1 update steps; each defect B - Lambda^t A Lambda must be divisible
// by p^nu (ExactDivisionFailure otherwise).
template <class E>
void solve_frame(Frame<E>& F) {
  const int n = F.n, N = F.N;
  const E& proto = F.x.a[0];
  F.Ainv.clear();
  for (int i = 0; i < n; ++i) F.Ainv.push_back(mat_simplify(inverse(F.A[i])));
  F.Lambda.assign(n, identity_like(proto, n));
  F.iterations = 0;
  for (int nu = 1; nu < N; ++nu) {
    std::vector<Mat<E>> C(n);
    for (int i = 0; i < n; ++i) {
      Mat<E> defect = F.B[i] - transpose(F.Lambda[i]) * F.A[i] * F.Lambda[i];
      C[i] = mat_simplify(mat_div_p_pow(defect, nu));
    }
    for (int i = 0; i < n; ++i) {
      Mat<E> D = C[i];
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) D(j, k) = half(C[i](j, k) + C[j](i, k) - C[k](i, j));
      Mat<E> Z = mat_simplify(mat_simplify(mat_truncate(F.Ainv[i], N - nu)) * transpose(D));
      F.Lambda[i] = mat_simplify(F.Lambda[i] + mat_mul_p_pow(Z, nu, N));
    }
    ++F.iterations;
  }
}

template <class E>
Frame<E> solve_at(const Mat<E>& x, const MetricTuple& q) {
  Frame<E> F = build_frame(x, q);
  solve_frame(F);
  return F;
}

template <class E>
Check verify_metric(const Frame<E>& F) {
  CheckBuilder cb("metric", "Lambda_i^t A_i Lambda_i = B_i");
  for (int i = 0; i < F.n; ++i) {
    Mat<E> L = transpose(F.Lambda[i]) * F.A[i] * F.Lambda[i];
    for (int j = 0; j < F.n; ++j)
      for (int k = 0; k < F.n; ++k) {
        E d = L(j, k) - F.B[i](j, k);
        cb.expect(elem_is_zero(d), [&] {
          return "i=" + std::to_string(i + 1) + " (" + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                 "): difference " + elem_str(d);
        });
      }
  }
  return cb.done();
}

template <class E>
Check verify_torsion(const Frame<E>& F) {
  CheckBuilder cb("torsion", "(A_i(Lambda_i-1))_kj = (A_j(Lambda_j-1))_ki");
  std::vector<Mat<E>> T;
  Mat<E> one = identity_like(F.x.a[0], F.n);
  for (int i = 0; i < F.n; ++i) T.push_back(F.A[i] * (F.Lambda[i] - one));
  for (int i = 0; i < F.n; ++i)
    for (int j = i + 1; j < F.n; ++j)
      for (int k = 0; k < F.n; ++k) {
        E d = T[i](k, j) - T[j](k, i);
        cb.expect(elem_is_zero(d), [&] {
          return "(i,j,k)=(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                 "): difference " + elem_str(d);
        });
      }
  return cb.done();
}

// Gamma_i = Delta_i^t phi(q_i) x^(p), Delta_i = x^(p)(Lambda_i - 1)/p; precision N-1.
template <class E>
std::vector<Mat<E>> christoffel(const Frame<E>& F, const MetricTuple& q) {
  std::vector<Mat<E>> G;
  const int M = F.N - 1;
  if (M < 1) throw PrecisionUnderflow("Christoffel symbols need precision >= 2");
  Mat<E> one = identity_like(F.x.a[0], F.n);
  Mat<E> xp = mat_truncate(F.xp, M);
  MetricTuple qq = q.with_precision(F.N);
  for (int i = 0; i < F.n; ++i) {
    Mat<E> Delta = mat_simplify(mat_div_p_pow(F.xp * (F.Lambda[i] - one), 1));
    Mat<E> phq = mat_embed(xp.a[0], truncate_matrix(frobenius_matrix(qq.q[i]), M));
    G.push_back(transpose(Delta) * phq * xp);
  }
  return G;
}

// C_i = -x^(p)t dq_i x^(p) + ((x^t q_i x)^(p) - x^(p)t q_i^(p) x^(p))/p, precision N-1.
template <class E>
std::vector<Mat<E>> first_order_C(const Frame<E>& F, const MetricTuple& q) {
  std::vector<Mat<E>> C;
  const int M = F.N - 1;
  Mat<E> xpM = mat_truncate(F.xp, M);
  MetricTuple qq = q.with_precision(F.N);
  for (int i = 0; i < F.n; ++i) {
    Mat<E> qpow = mat_embed(F.x.a[0], map_entries(qq.q[i], [](const PadicScalar& s) {
                              return s.pow(static_cast<u64>(s.ctx()->p()));
                            }));
    Mat<E> second = mat_div_p_pow(F.B[i] - transpose(F.xp) * qpow * F.xp, 1);
    Mat<E> dq = mat_embed(xpM.a[0], p_derivation_matrix(qq.q[i]));
    C.push_back(second - transpose(xpM) * dq * xpM);
  }
  return C;
}

template <class E>
Check verify_gamma_symmetry(const std::vector<Mat<E>>& G) {
  CheckBuilder cb("christoffel-symmetry", "Gamma_ijk = Gamma_jik");
  const int n = static_cast<int>(G.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        E d = G[i](j, k) - G[j](i, k);
        cb.expect(elem_is_zero(d), [&] {
          return "(i,j,k)=(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                 "): " + elem_str(d);
        });
      }
  return cb.done();
}

// Gamma_ijk = 1/2 (C_ijk + C_jik - C_kij) mod p.
template <class E>
Check verify_christoffel_mod_p(const std::vector<Mat<E>>& G, const std::vector<Mat<E>>& C) {
  CheckBuilder cb("christoffel-mod-p", "Gamma_ijk = (C_ijk + C_jik - C_kij)/2 mod p");
  const int n = static_cast<int>(G.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        E rhs = half(C[i](j, k) + C[j](i, k) - C[k](i, j));
        E d = G[i](j, k) - rhs;
        cb.expect(elem_zero_mod_p(d), [&] {
          return "(i,j,k)=(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                 "): " + elem_str(d);
        });
      }
  return cb.done();
}

// Residues at x = 1 of Gamma_ijk against -1/2 (dq_ijk + dq_jik - dq_kij) mod p.
// `gamma_at_one(i, j, k)` returns the residue of Gamma_ijk at x = 1.
template <class F>
Check verify_christoffel_at_identity(int n, const MetricTuple& q, F gamma_at_one) {
  CheckBuilder cb("christoffel-mod-p-x-1", "Gamma_ijk = -(dq_ijk + dq_jik - dq_kij)/2 mod (p, x-1)");
  MetricTuple q2 = q.with_precision(2);
  std::vector<ScalarMatrix> dq;
  for (int i = 0; i < n; ++i) dq.push_back(p_derivation_matrix(q2.q[i]));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        PadicScalar rhs = -(dq[i](j, k) + dq[j](i, k) - dq[k](i, j));
        rhs = rhs.scaled(static_cast<i64>((rhs.ctx()->modulus() + 1) / 2));
        std::vector<u64> want = rhs.residue();
        std::vector<u64> got = gamma_at_one(i, j, k);
        cb.expect(want == got, [&] {
          std::string s = "(i,j,k)=(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                          std::to_string(k + 1) + "): got";
          for (u64 v : got) s += " " + std::to_string(v);
          s += ", expected";
          for (u64 v : want) s += " " + std::to_string(v);
          return s;
        });
      }
  return cb.done();
}

// ---------------------------------------------------------------------------
// Symbolic connection over O(GL_n) mod p^N.

class Connection {
 public:
  Connection() = default;
  Connection(RingPtr R, MetricTuple q, Frame<RingElem> F);

  const RingPtr& ring() const { return R_; }
  const MetricTuple& metric() const { return q_; }
  const Frame<RingElem>& frame() const { return F_; }
  int n() const { return F_.n; }
  int N() const { return F_.N; }
  const RingMatrix& lambda(int i) const { return F_.Lambda[i]; }
  const RingMatrix& A(int i) const { return F_.A[i]; }
  const RingMatrix& B(int i) const { return F_.B[i]; }
  int iterations() const { return F_.iterations; }
  // The i-th Frobenius lift (built on first use).
  const FrobeniusLift& lift(int i) const;

 private:
  RingPtr R_;
  MetricTuple q_;
  Frame<RingElem> F_;
  struct Lifts {
    std::mutex mu;
    std::vector<std::unique_ptr<FrobeniusLift>> v;
  };
  std::shared_ptr<Lifts> lifts_;
};

struct ABPair {
  std::vector<RingMatrix> A, B;
};
ABPair build_AB(const RingPtr& R, const MetricTuple& q);
Connection solve(const MetricTuple& q, int N);

std::vector<RingMatrix> christoffel(const Connection& c);
std::vector<RingMatrix> first_order_C(const Connection& c);
std::vector<Check> verify_connection(const Connection& c);
std::vector<Check> verify_congruence_christoffel(const Connection& c);

// Remark on det(Lambda) and tr((Lambda-1)/p) modulo the ideal J of the
// center (x = lambda*1) or of the diagonal torus.
enum class Situation { Center, Torus };
std::vector<Check> verify_det_lambda(const Connection& c, Situation s);
// det(1 + p (q^(p))^-1 dq)^(-1/2), the branch = 1 mod p.
PadicScalar det_lambda_constant(const ScalarMatrix& q);

// n = 1: (d^p / phi(d))^(1/2), branch = 1 mod p.
PadicScalar n1_closed_form(const PadicScalar& d);
// For d in Z_p^x: (d/p) * d^((p-1)/2).
PadicScalar n1_legendre_form(const PadicScalar& d);

// Vertical gauge: sigma_1 = id; q over the cyclotomic integers.
struct VerticalGauge {
  int m = 1;
  std::vector<int> exponents;  // sigma_i : zeta -> zeta^{a_i}
};
MetricTuple vertical_setup(const std::vector<std::vector<CyclotomicInt>>& q, const VerticalGauge& gauge,
                           const CtxPtr& base);
std::vector<Check> verify_vertical_congruences(const std::vector<std::vector<CyclotomicInt>>& q, const VerticalGauge& gauge,
                                 const CtxPtr& base);

}  // namespace alc
