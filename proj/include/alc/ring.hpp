#pragma once

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "alc/padic.hpp"
#include "alc/poly.hpp"

namespace alc {

// Which localization a ring of fractions f/gen^k describes.
//   GLn    : O[x_ij, det(x)^-1], gen = det(x)
//   GL1c   : O[alpha, beta, (alpha^2+beta^2)^-1], gen = alpha^2+beta^2
//   Center : O[lambda, lambda^-1], gen = lambda (x restricted to lambda*1)
//   Torus  : O[l_1..l_n, (l_1...l_n)^-1], gen = l_1...l_n (diagonal x)
enum class RingKind { GLn, GL1c, Center, Torus };

class RingContext;
using RingPtr = std::shared_ptr<const RingContext>;

class RingContext : public std::enable_shared_from_this<RingContext> {
 public:
  const CtxPtr& base() const { return base_; }
  const BaseContext& B() const { return *base_; }
  RingKind kind() const { return kind_; }
  int n() const { return n_; }
  int nvars() const { return nvars_; }
  const std::vector<std::string>& names() const { return names_; }
  const Poly& gen() const { return gen_; }
  int gen_degree() const { return gen_degree_; }
  int N() const { return base_->N(); }
  i64 p() const { return base_->p(); }

  // gen^k, cached.
  Poly gen_pow(int k) const;
  // Same ring over the base at another precision (shared within a family).
  RingPtr with_precision(int N) const;
  bool same_shape(const RingContext& o) const;
  // index of x_ij in GLn mode
  int var(int i, int j) const { return i * n_ + j; }

  static RingPtr gln(const CtxPtr& base, int n);
  static RingPtr gl1c(const CtxPtr& base);
  static RingPtr center(const CtxPtr& base, int n);
  static RingPtr torus(const CtxPtr& base, int n);

 private:
  struct Family;
  RingContext() = default;
  static RingPtr build(const CtxPtr& base, RingKind kind, int n, std::shared_ptr<Family> fam);

  CtxPtr base_;
  RingKind kind_ = RingKind::GLn;
  int n_ = 0;
  int nvars_ = 0;
  std::vector<std::string> names_;
  Poly gen_;
  int gen_degree_ = 0;
  std::shared_ptr<Family> family_;
  mutable std::mutex mu_;
  mutable std::deque<Poly> pows_;
};

// numerator / gen^k
class RingElem {
 public:
  RingElem() = default;
  explicit RingElem(RingPtr R) : R_(std::move(R)) {}
  RingElem(RingPtr R, Poly num, int k);

  static RingElem constant(const RingPtr& R, i64 v);
  static RingElem scalar(const RingPtr& R, const PadicScalar& s);
  static RingElem variable(const RingPtr& R, int v);
  static RingElem x(const RingPtr& R, int i, int j) { return variable(R, R->var(i, j)); }
  static RingElem gen(const RingPtr& R) { return RingElem(R, R->gen(), 0); }
  static RingElem gen_inverse(const RingPtr& R, int k = 1);

  const RingPtr& ring() const { return R_; }
  const Poly& num() const { return num_; }
  int k() const { return k_; }
  int precision() const { return R_->N(); }
  bool is_zero() const { return num_.empty(); }
  size_t terms() const { return num_.size(); }

  RingElem operator+(const RingElem& o) const;
  RingElem operator-(const RingElem& o) const;
  RingElem operator-() const;
  RingElem operator*(const RingElem& o) const;
  RingElem& operator+=(const RingElem& o) { return *this = *this + o; }
  RingElem& operator-=(const RingElem& o) { return *this = *this - o; }
  RingElem& operator*=(const RingElem& o) { return *this = *this * o; }
  RingElem pow(int e) const;
  RingElem scaled(const PadicScalar& s) const;
  RingElem scaled(i64 c) const;
  // Same element with denominator gen^k2 (k2 >= k).
  RingElem with_k(int k2) const;

  std::string str(size_t max_terms = 0) const;

 private:
  RingPtr R_;
  Poly num_;
  int k_ = 0;
};

bool equals(const RingElem& f, const RingElem& g);
inline bool operator==(const RingElem& f, const RingElem& g) { return equals(f, g); }
inline bool operator!=(const RingElem& f, const RingElem& g) { return !equals(f, g); }

RingElem invert_unit(const RingElem& f);
RingElem div_p_pow(const RingElem& f, int nu);
RingElem mul_p_pow(const RingElem& f, int nu, int target_N);
RingElem truncate(const RingElem& f, int N);
// Coefficientwise base Frobenius (variables untouched).
RingElem frobenius_coeffs(const RingElem& f);
// Cancels factors gen from numerator and denominator while the division is exact.
RingElem reduce_fraction(const RingElem& f);
// Reduction mod p: true when every numerator coefficient vanishes mod p.
bool is_zero_mod_p(const RingElem& f);
// Value at the point where all variables take the given base values; the
// generator must evaluate to a unit.
PadicScalar evaluate(const RingElem& f, const std::vector<PadicScalar>& point);
// x = identity (or alpha=1, beta=0; lambda=1), then mod p. Residue field
// element as coefficients mod p.
std::vector<u64> reduce_mod_p_and_x1(const RingElem& f);

// ---------------------------------------------------------------------------
// Square matrices over a commutative ring type E.

template <class E>
struct Mat {
  int n = 0;
  std::vector<E> a;

  Mat() = default;
  Mat(int n_, const E& fill) : n(n_), a(static_cast<size_t>(n_) * n_, fill) {}
  E& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const E& operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

// Element-type adapters used by the generic matrix code and solver.
inline RingElem constant_like(const RingElem& proto, i64 v) { return RingElem::constant(proto.ring(), v); }
inline PadicScalar constant_like(const PadicScalar& proto, i64 v) { return PadicScalar::from_int(proto.ctx(), v); }
inline RingElem unit_inverse(const RingElem& f) { return invert_unit(f); }
inline PadicScalar unit_inverse(const PadicScalar& f) { return inverse(f); }
inline bool elem_is_zero(const RingElem& f) { return f.is_zero(); }
inline bool elem_is_zero(const PadicScalar& f) { return f.is_zero(); }

template <class E>
Mat<E> identity_like(const E& proto, int n) {
  Mat<E> m(n, constant_like(proto, 0));
  for (int i = 0; i < n; ++i) m(i, i) = constant_like(proto, 1);
  return m;
}

template <class E>
Mat<E> operator*(const Mat<E>& A, const Mat<E>& B) {
  Mat<E> C(A.n, constant_like(A.a[0], 0));
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) {
      E s = A(i, 0) * B(0, j);
      for (int k = 1; k < A.n; ++k) s += A(i, k) * B(k, j);
      C(i, j) = s;
    }
  return C;
}

template <class E>
Mat<E> operator+(const Mat<E>& A, const Mat<E>& B) {
  Mat<E> C = A;
  for (size_t t = 0; t < C.a.size(); ++t) C.a[t] += B.a[t];
  return C;
}

template <class E>
Mat<E> operator-(const Mat<E>& A, const Mat<E>& B) {
  Mat<E> C = A;
  for (size_t t = 0; t < C.a.size(); ++t) C.a[t] -= B.a[t];
  return C;
}

template <class E>
Mat<E> transpose(const Mat<E>& A) {
  Mat<E> T = A;
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) T(i, j) = A(j, i);
  return T;
}

template <class E, class F>
auto map_entries(const Mat<E>& A, F f) {
  using R = decltype(f(A.a[0]));
  Mat<R> out;
  out.n = A.n;
  out.a.reserve(A.a.size());
  for (const auto& e : A.a) out.a.push_back(f(e));
  return out;
}

template <class E>
Mat<E> minor_of(const Mat<E>& A, int r, int c) {
  Mat<E> m;
  m.n = A.n - 1;
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j)
      if (i != r && j != c) m.a.push_back(A(i, j));
  return m;
}

template <class E>
E det(const Mat<E>& A) {
  if (A.n == 1) return A(0, 0);
  if (A.n == 2) return A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
  E s = constant_like(A.a[0], 0);
  for (int j = 0; j < A.n; ++j) {
    E t = A(0, j) * det(minor_of(A, 0, j));
    if (j % 2) s -= t;
    else s += t;
  }
  return s;
}

template <class E>
Mat<E> adjugate(const Mat<E>& A) {
  Mat<E> adj(A.n, constant_like(A.a[0], 0));
  if (A.n == 1) {
    adj(0, 0) = constant_like(A.a[0], 1);
    return adj;
  }
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) {
      E c = det(minor_of(A, i, j));
      adj(j, i) = (i + j) % 2 ? -c : c;
    }
  return adj;
}

template <class E>
Mat<E> inverse(const Mat<E>& A) {
  E d = unit_inverse(det(A));
  Mat<E> adj = adjugate(A);
  for (auto& e : adj.a) e = e * d;
  return adj;
}

template <class E>
bool mat_equal(const Mat<E>& A, const Mat<E>& B) {
  if (A.n != B.n) return false;
  for (size_t t = 0; t < A.a.size(); ++t)
    if (!(A.a[t] == B.a[t])) return false;
  return true;
}

using RingMatrix = Mat<RingElem>;
using ScalarMatrix = Mat<PadicScalar>;

RingMatrix generic_matrix(const RingPtr& R);  // x = (x_ij)
RingMatrix entrywise_pth_power(const RingMatrix& M);
RingMatrix scalar_matrix(const RingPtr& R, const ScalarMatrix& q);
RingMatrix scalar_identity(const RingPtr& R);

// ---------------------------------------------------------------------------
// Ring homomorphism from src to dst: base map on coefficients (identity or
// Frobenius), variables sent to the given images. The image of gen must be a
// unit of dst; its inverse is computed once.
class SubstitutionMap {
 public:
  enum class BaseMap { Identity, Frobenius };

  SubstitutionMap() = default;
  SubstitutionMap(RingPtr src, BaseMap base, std::vector<RingElem> images);
  // Coefficients get the base Frobenius applied frob_count times.
  SubstitutionMap(RingPtr src, int frob_count, std::vector<RingElem> images);

  static SubstitutionMap identity(const RingPtr& R);
  // x -> x^t q x (q over the base ring), identity on coefficients.
  static SubstitutionMap metric(const RingPtr& R, const ScalarMatrix& q);
  // x -> x^(p), Frobenius on coefficients.
  static SubstitutionMap trivial_lift(const RingPtr& R);

  const RingPtr& src() const { return src_; }
  const RingPtr& dst() const { return dst_; }
  int frob_count() const { return frob_; }
  const std::vector<RingElem>& images() const { return images_; }
  const RingElem& gen_image_inverse() const { return gen_inv_; }

  RingElem apply(const RingElem& f) const;
  Mat<RingElem> apply(const Mat<RingElem>& M) const;
  // this after first: f -> this(first(f)).
  SubstitutionMap after(const SubstitutionMap& first) const;

 private:
  RingPtr src_, dst_;
  int frob_ = 0;
  std::vector<RingElem> images_;
  RingElem gen_inv_;
  struct PowCache;
  std::shared_ptr<PowCache> cache_;
  Poly substitute(const Poly& f) const;
};

// Restriction maps used by ideal-membership tests.
//   GLn(2) -> GL1c : x11 = x22 = alpha, x12 = -x21 = beta
//   GLn(n) -> Center(n) : x = lambda * 1
//   GLn(n) -> Torus(n)  : x = diag(l_1..l_n)
SubstitutionMap restrict_to_gl1c(const RingPtr& gl2);
SubstitutionMap restrict_to_center(const RingPtr& gln);
SubstitutionMap restrict_to_torus(const RingPtr& gln);
// Normal form in O[alpha, beta]/(alpha^2+beta^2-1): gen -> 1, beta^2 -> 1-alpha^2;
// returns the reduced numerator (zero iff f lies in the ideal).
Poly reduce_mod_circle(const RingElem& f);

}  // namespace alc
