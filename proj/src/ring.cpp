#include "alc/ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace alc {

struct RingContext::Family {
  std::mutex mu;
  std::map<int, std::weak_ptr<const RingContext>> members;
};

namespace {

Poly permutation_det(const BaseContext& B, int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Poly d;
  std::vector<u64> one(B.degree(), 0);
  one[0] = 1 % B.modulus();
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inv;
    std::vector<int> e(n * n, 0);
    for (int i = 0; i < n; ++i) e[i * n + perm[i]] = 1;
    Poly t = poly_term(B, mono_make(e), one.data());
    d = inv % 2 ? poly_sub(B, d, t) : poly_add(B, d, t);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return d;
}

void require_same(const RingElem& a, const RingElem& b) {
  if (a.ring().get() == b.ring().get()) return;
  if (!a.ring() || !b.ring() || !a.ring()->same_shape(*b.ring()) || a.ring()->N() != b.ring()->N())
    throw ContextMismatch("ring elements live in different rings");
}

}  // namespace

RingPtr RingContext::build(const CtxPtr& base, RingKind kind, int n, std::shared_ptr<Family> fam) {
  if (n < 1 || (kind == RingKind::GLn && n * n > kMaxVars) || (kind == RingKind::Torus && n > kMaxVars))
    throw DomainError("unsupported matrix size " + std::to_string(n));
  auto* R = new RingContext();
  R->base_ = base;
  R->kind_ = kind;
  R->n_ = n;
  const BaseContext& B = *base;
  switch (kind) {
    case RingKind::GLn:
      R->nvars_ = n * n;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R->names_.push_back("x" + std::to_string(i + 1) + std::to_string(j + 1));
      R->gen_ = permutation_det(B, n);
      R->gen_degree_ = n;
      break;
    case RingKind::GL1c:
      R->nvars_ = 2;
      R->n_ = 2;
      R->names_ = {"alpha", "beta"};
      R->gen_ = poly_add(B, poly_pow(B, poly_var(B, 0), 2), poly_pow(B, poly_var(B, 1), 2));
      R->gen_degree_ = 2;
      break;
    case RingKind::Center:
      R->nvars_ = 1;
      R->names_ = {"lambda"};
      R->gen_ = poly_var(B, 0);
      R->gen_degree_ = 1;
      break;
    case RingKind::Torus: {
      R->nvars_ = n;
      Poly g = poly_int(B, 1);
      for (int i = 0; i < n; ++i) {
        R->names_.push_back("l" + std::to_string(i + 1));
        g = poly_mul(B, g, poly_var(B, i));
      }
      R->gen_ = g;
      R->gen_degree_ = n;
      break;
    }
  }
  R->pows_.push_back(poly_int(B, 1));
  R->family_ = fam ? fam : std::make_shared<Family>();
  RingPtr out(R);
  std::lock_guard<std::mutex> lk(R->family_->mu);
  R->family_->members[base->N()] = out;
  return out;
}

RingPtr RingContext::gln(const CtxPtr& base, int n) { return build(base, RingKind::GLn, n, nullptr); }
RingPtr RingContext::gl1c(const CtxPtr& base) { return build(base, RingKind::GL1c, 2, nullptr); }
RingPtr RingContext::center(const CtxPtr& base, int n) { return build(base, RingKind::Center, n, nullptr); }
RingPtr RingContext::torus(const CtxPtr& base, int n) { return build(base, RingKind::Torus, n, nullptr); }

Poly RingContext::gen_pow(int k) const {
  std::lock_guard<std::mutex> lk(mu_);
  while (static_cast<int>(pows_.size()) <= k) pows_.push_back(poly_mul(*base_, pows_.back(), gen_));
  return pows_[k];
}

RingPtr RingContext::with_precision(int N) const {
  if (N == base_->N()) return shared_from_this();
  {
    std::lock_guard<std::mutex> lk(family_->mu);
    auto it = family_->members.find(N);
    if (it != family_->members.end())
      if (auto sp = it->second.lock()) return sp;
  }
  return build(base_->with_precision(N), kind_, n_, family_);
}

bool RingContext::same_shape(const RingContext& o) const {
  return kind_ == o.kind_ && n_ == o.n_ && base_->same_field(*o.base_);
}

// ---------------------------------------------------------------------------

RingElem::RingElem(RingPtr R, Poly num, int k) : R_(std::move(R)), num_(std::move(num)), k_(k) {
  if (num_.empty()) k_ = 0;
}

RingElem RingElem::constant(const RingPtr& R, i64 v) { return RingElem(R, poly_int(R->B(), v), 0); }

RingElem RingElem::scalar(const RingPtr& R, const PadicScalar& s) {
  if (!s.ctx()->same_field(R->B())) throw ContextMismatch("scalar from another field");
  std::vector<u64> c = s.coeffs();
  for (auto& x : c) x %= R->B().modulus();
  return RingElem(R, poly_constant(R->B(), c.data()), 0);
}

RingElem RingElem::variable(const RingPtr& R, int v) {
  if (v < 0 || v >= R->nvars()) throw DomainError("variable index out of range");
  return RingElem(R, poly_var(R->B(), v), 0);
}

RingElem RingElem::gen_inverse(const RingPtr& R, int k) { return RingElem(R, poly_int(R->B(), 1), k); }

RingElem RingElem::with_k(int k2) const {
  if (k2 < k_) throw DomainError("with_k cannot lower the denominator exponent");
  if (k2 == k_ || num_.empty()) return *this;
  RingElem r(R_, poly_mul(R_->B(), num_, R_->gen_pow(k2 - k_)), k2);
  return r;
}

RingElem RingElem::operator+(const RingElem& o) const {
  if (o.num_.empty()) return *this;
  if (num_.empty()) return o;
  require_same(*this, o);
  int k = std::max(k_, o.k_);
  RingElem a = with_k(k), b = o.with_k(k);
  return RingElem(R_, poly_add(R_->B(), a.num_, b.num_), k);
}

RingElem RingElem::operator-(const RingElem& o) const {
  if (o.num_.empty()) return *this;
  if (num_.empty()) return -o;
  require_same(*this, o);
  int k = std::max(k_, o.k_);
  RingElem a = with_k(k), b = o.with_k(k);
  return RingElem(R_, poly_sub(R_->B(), a.num_, b.num_), k);
}

RingElem RingElem::operator-() const { return RingElem(R_, poly_neg(R_->B(), num_), k_); }

RingElem RingElem::operator*(const RingElem& o) const {
  if (num_.empty()) return *this;
  if (o.num_.empty()) return o;
  require_same(*this, o);
  return RingElem(R_, poly_mul(R_->B(), num_, o.num_), k_ + o.k_);
}

RingElem RingElem::pow(int e) const {
  if (e < 0) return invert_unit(*this).pow(-e);
  RingElem r = constant(R_, 1), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

RingElem RingElem::scaled(const PadicScalar& s) const {
  std::vector<u64> c = s.coeffs();
  for (auto& x : c) x %= R_->B().modulus();
  return RingElem(R_, poly_scale(R_->B(), num_, c.data()), k_);
}

RingElem RingElem::scaled(i64 c) const { return RingElem(R_, poly_scale_int(R_->B(), num_, c), k_); }

std::string RingElem::str(size_t max_terms) const {
  std::string s = poly_to_string(R_->B(), num_, R_->names(), max_terms);
  if (k_ == 0) return s;
  std::string g;
  switch (R_->kind()) {
    case RingKind::GLn: g = "det"; break;
    case RingKind::GL1c: g = "(alpha^2+beta^2)"; break;
    case RingKind::Center: g = "lambda"; break;
    case RingKind::Torus: g = "(l1*...*l" + std::to_string(R_->n()) + ")"; break;
  }
  return "(" + s + ")/" + g + (k_ > 1 ? "^" + std::to_string(k_) : "");
}

bool equals(const RingElem& f, const RingElem& g) {
  if (f.is_zero() && g.is_zero()) return true;
  if (f.ring() && g.ring()) require_same(f, g);
  if (f.is_zero() || g.is_zero()) return false;
  int k = std::max(f.k(), g.k());
  return poly_equal(f.with_k(k).num(), g.with_k(k).num());
}

RingElem invert_unit(const RingElem& f) {
  const RingPtr& R = f.ring();
  const BaseContext& B = R->B();
  const int d = B.degree();
  const int N = B.N();
  Poly r = poly_residue(B, f.num());
  auto fail = [&]() -> NotAUnit {
    CtxPtr B1 = B.with_precision(1);
    Poly g1 = poly_truncate(*B1, R->gen()), cur = poly_truncate(*B1, r), q;
    int j = 0;
    while (!cur.empty() && poly_divexact(*B1, cur, g1, &q)) {
      cur = q;
      ++j;
    }
    std::string gname = R->kind() == RingKind::GLn ? "det" : "gen";
    return NotAUnit("not a unit: residue mod p = " + gname + "^" + std::to_string(j) + " * (" +
                    poly_to_string(*B1, cur, R->names(), 10) + "), which is not a constant");
  };
  if (r.empty()) throw fail();
  int deg = mono_degree(r.mono[0]);
  if (deg % R->gen_degree()) throw fail();
  int e = deg / R->gen_degree();
  PadicScalar c = PadicScalar::from_raw(R->base(), std::vector<u64>(r.c(0, d), r.c(0, d) + d));
  Poly ge = R->gen_pow(e);
  if (!poly_equal(poly_residue(B, poly_scale(B, ge, c.coeffs().data())), r)) throw fail();
  PadicScalar ci = inverse(c);
  // f.num * c^-1 = gen^e + w with w = 0 mod p
  Poly w = poly_sub(B, poly_scale(B, f.num(), ci.coeffs().data()), ge);
  Poly S;
  int kk;
  if (w.empty()) {
    S = poly_int(B, 1);
    kk = e;
  } else {
    Poly a = poly_neg(B, w);
    S = poly_int(B, 1);
    for (int j = 1; j < N; ++j) S = poly_add(B, poly_mul(B, S, a), R->gen_pow(e * j));
    kk = e * N;
  }
  S = poly_scale(B, S, ci.coeffs().data());
  if (kk >= f.k()) return RingElem(R, S, kk - f.k());
  return RingElem(R, poly_mul(B, S, R->gen_pow(f.k() - kk)), 0);
}

RingElem div_p_pow(const RingElem& f, int nu) {
  if (nu == 0) return f;
  int N = f.precision();
  if (nu >= N) throw PrecisionUnderflow("division by p^" + std::to_string(nu) + " at precision " + std::to_string(N));
  RingPtr to = f.ring()->with_precision(N - nu);
  return RingElem(to, poly_div_p_pow(f.ring()->B(), to->B(), f.num(), nu), f.k());
}

RingElem mul_p_pow(const RingElem& f, int nu, int target_N) {
  if (target_N > f.precision() + nu) throw PrecisionUnderflow("mul_p_pow target precision too high");
  RingPtr to = f.ring()->with_precision(target_N);
  return RingElem(to, poly_mul_p_pow(f.ring()->B(), to->B(), f.num(), nu), f.k());
}

RingElem truncate(const RingElem& f, int N) {
  if (N == f.precision()) return f;
  if (N > f.precision()) throw PrecisionUnderflow("cannot raise precision by truncation");
  RingPtr to = f.ring()->with_precision(N);
  return RingElem(to, poly_truncate(to->B(), f.num()), f.k());
}

RingElem frobenius_coeffs(const RingElem& f) {
  return RingElem(f.ring(), poly_frobenius_coeffs(f.ring()->B(), f.num()), f.k());
}

RingElem reduce_fraction(const RingElem& f) {
  if (f.is_zero() || f.k() == 0) return f;
  const RingPtr& R = f.ring();
  Poly cur = f.num(), q;
  int k = f.k();
  while (k > 0 && poly_divexact(R->B(), cur, R->gen(), &q)) {
    cur = std::move(q);
    --k;
  }
  return RingElem(R, std::move(cur), k);
}

bool is_zero_mod_p(const RingElem& f) { return poly_divisible_by_p_pow(f.ring()->B(), f.num(), 1); }

PadicScalar evaluate(const RingElem& f, const std::vector<PadicScalar>& point) {
  const RingPtr& R = f.ring();
  const int d = R->B().degree();
  if (static_cast<int>(point.size()) != R->nvars()) throw DomainError("point has wrong dimension");
  CtxPtr ctx = point[0].ctx();
  PadicScalar acc(ctx);
  auto val = [&](const Poly& P) {
    PadicScalar s(ctx);
    for (size_t t = 0; t < P.size(); ++t) {
      std::vector<u64> c(P.c(t, d), P.c(t, d) + d);
      if (!R->B().same_field(*ctx)) {
        if (d != 1) throw ContextMismatch("cannot evaluate " + R->B().describe() + " at a point of " + ctx->describe());
        c.resize(ctx->degree(), 0);
      }
      for (auto& v : c) v %= ctx->modulus();
      PadicScalar term = PadicScalar::from_raw(ctx, c);
      for (int v = 0; v < R->nvars(); ++v) {
        int e = mono_exp(P.mono[t], v);
        if (e) term *= point[v].pow(e);
      }
      s += term;
    }
    return s;
  };
  acc = val(f.num());
  if (f.k()) acc *= inverse(val(R->gen())).pow(f.k());
  return acc;
}

namespace {

std::vector<PadicScalar> unit_point(const RingPtr& R) {
  std::vector<PadicScalar> pt(R->nvars(), PadicScalar(R->base()));
  switch (R->kind()) {
    case RingKind::GLn:
      for (int i = 0; i < R->n(); ++i) pt[R->var(i, i)] = PadicScalar::from_int(R->base(), 1);
      break;
    case RingKind::GL1c:
      pt[0] = PadicScalar::from_int(R->base(), 1);
      break;
    default:
      for (auto& x : pt) x = PadicScalar::from_int(R->base(), 1);
  }
  return pt;
}

}  // namespace

std::vector<u64> reduce_mod_p_and_x1(const RingElem& f) {
  if (f.is_zero()) return std::vector<u64>(f.ring() ? f.ring()->B().degree() : 1, 0);
  return evaluate(f, unit_point(f.ring())).residue();
}

// ---------------------------------------------------------------------------

RingMatrix generic_matrix(const RingPtr& R) {
  if (R->kind() != RingKind::GLn) throw DomainError("generic matrix needs a GL_n ring");
  RingMatrix x(R->n(), RingElem(R));
  for (int i = 0; i < R->n(); ++i)
    for (int j = 0; j < R->n(); ++j) x(i, j) = RingElem::x(R, i, j);
  return x;
}

RingMatrix entrywise_pth_power(const RingMatrix& M) {
  return map_entries(M, [](const RingElem& e) { return e.pow(static_cast<int>(e.ring()->p())); });
}

RingMatrix scalar_matrix(const RingPtr& R, const ScalarMatrix& q) {
  return map_entries(q, [&](const PadicScalar& s) { return RingElem::scalar(R, s); });
}

RingMatrix scalar_identity(const RingPtr& R) { return identity_like(RingElem::constant(R, 0), R->n()); }

// ---------------------------------------------------------------------------

struct SubstitutionMap::PowCache {
  std::mutex mu;
  std::vector<RingElem> gen_inv_pows;
};

SubstitutionMap::SubstitutionMap(RingPtr src, BaseMap base, std::vector<RingElem> images)
    : SubstitutionMap(std::move(src), base == BaseMap::Frobenius ? 1 : 0, std::move(images)) {}

SubstitutionMap::SubstitutionMap(RingPtr src, int frob_count, std::vector<RingElem> images)
    : src_(std::move(src)), frob_(frob_count), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != src_->nvars()) throw DomainError("substitution needs one image per variable");
  for (const auto& im : images_)
    if (im.ring()) {
      dst_ = im.ring();
      break;
    }
  if (!dst_) throw DomainError("substitution images carry no ring");
  for (auto& im : images_) {
    if (!im.ring()) im = RingElem(dst_);
    if (im.ring().get() != dst_.get() && !(im.ring()->same_shape(*dst_) && im.ring()->N() == dst_->N()))
      throw ContextMismatch("substitution images in different rings");
  }
  if (!src_->B().same_field(dst_->B()) || dst_->N() > src_->N())
    throw ContextMismatch("substitution target base must be the same field at no higher precision");
  cache_ = std::make_shared<PowCache>();
  RingElem gi(dst_, substitute(src_->gen()), 0);
  gen_inv_ = invert_unit(gi);
  cache_->gen_inv_pows.push_back(RingElem::constant(dst_, 1));
}

SubstitutionMap SubstitutionMap::identity(const RingPtr& R) {
  std::vector<RingElem> im;
  for (int v = 0; v < R->nvars(); ++v) im.push_back(RingElem::variable(R, v));
  return SubstitutionMap(R, 0, im);
}

SubstitutionMap SubstitutionMap::metric(const RingPtr& R, const ScalarMatrix& q) {
  RingMatrix x = generic_matrix(R);
  RingMatrix H = transpose(x) * scalar_matrix(R, q) * x;
  return SubstitutionMap(R, 0, H.a);
}

SubstitutionMap SubstitutionMap::trivial_lift(const RingPtr& R) {
  std::vector<RingElem> im;
  for (int v = 0; v < R->nvars(); ++v) im.push_back(RingElem::variable(R, v).pow(static_cast<int>(R->p())));
  return SubstitutionMap(R, 1, im);
}

namespace {

struct Term {
  std::vector<int> e;
  size_t idx;
};

}  // namespace

Poly SubstitutionMap::substitute(const Poly& f0) const {
  const BaseContext& S = src_->B();
  const BaseContext& D = dst_->B();
  const int d = S.degree();
  const int nv = src_->nvars();
  Poly f = f0;
  for (int t = 0; t < frob_; ++t) f = poly_frobenius_coeffs(S, f);
  if (f.empty()) return {};
  int K = 0;
  for (const auto& im : images_) K = std::max(K, im.k());
  std::vector<Poly> img(nv);
  for (int v = 0; v < nv; ++v) img[v] = images_[v].with_k(K).num();

  std::vector<Term> terms(f.size());
  int maxdeg = 0;
  for (size_t t = 0; t < f.size(); ++t) {
    terms[t].e = mono_exps(f.mono[t], nv);
    terms[t].idx = t;
    maxdeg = std::max(maxdeg, mono_degree(f.mono[t]));
  }
  // lexicographic, descending
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.e > b.e; });

  std::vector<std::map<int, Poly>> pw(nv);
  auto power = [&](int v, int e) -> const Poly& {
    auto it = pw[v].find(e);
    if (it != pw[v].end()) return it->second;
    Poly r;
    if (e == 0) {
      r = poly_int(D, 1);
    } else if (e == 1) {
      r = img[v];
    } else {
      auto lo = pw[v].lower_bound(e);
      int best = 0;
      if (lo != pw[v].begin()) best = std::prev(lo)->first;
      r = best > 0 ? poly_mul(D, pw[v][best], poly_pow(D, img[v], e - best)) : poly_pow(D, img[v], e);
    }
    return pw[v].emplace(e, std::move(r)).first->second;
  };

  std::function<Poly(size_t, size_t, int)> horner = [&](size_t lo, size_t hi, int v) -> Poly {
    if (v == nv) {
      std::vector<u64> c(f.c(terms[lo].idx, d), f.c(terms[lo].idx, d) + d);
      for (auto& x : c) x %= D.modulus();
      return poly_constant(D, c.data());
    }
    Poly acc;
    int prev = -1;
    size_t a = lo;
    while (a < hi) {
      size_t b = a;
      int e = terms[a].e[v];
      while (b < hi && terms[b].e[v] == e) ++b;
      Poly sub = horner(a, b, v + 1);
      if (prev < 0) acc = std::move(sub);
      else acc = poly_add(D, poly_mul(D, acc, power(v, prev - e)), sub);
      prev = e;
      a = b;
    }
    if (prev > 0) acc = poly_mul(D, acc, power(v, prev));
    return acc;
  };

  if (K == 0) return horner(0, terms.size(), 0);
  // Split by total degree so each piece has the uniform denominator gen^(K*deg).
  std::map<int, std::vector<Term>, std::greater<int>> bydeg;
  for (auto& t : terms) {
    int deg = std::accumulate(t.e.begin(), t.e.end(), 0);
    bydeg[deg].push_back(t);
  }
  Poly total;
  for (auto& [deg, part] : bydeg) {
    terms = part;
    Poly piece = horner(0, terms.size(), 0);
    if (deg < maxdeg) piece = poly_mul(D, piece, dst_->gen_pow(K * (maxdeg - deg)));
    total = poly_add(D, total, piece);
  }
  return total;
}

RingElem SubstitutionMap::apply(const RingElem& f) const {
  if (f.is_zero()) return RingElem(dst_);
  if (!f.ring()->same_shape(*src_)) throw ContextMismatch("substitution applied to element of another ring");
  if (f.precision() < dst_->N()) throw ContextMismatch("element precision below substitution target");
  int K = 0;
  for (const auto& im : images_) K = std::max(K, im.k());
  int maxdeg = 0;
  for (Mono m : f.num().mono) maxdeg = std::max(maxdeg, mono_degree(m));
  Poly num = f.num();
  if (f.precision() > src_->N()) num = poly_truncate(src_->B(), num);
  RingElem r(dst_, substitute(num), K * maxdeg);
  if (f.k() == 0) return r;
  RingElem gk;
  {
    std::lock_guard<std::mutex> lk(cache_->mu);
    auto& v = cache_->gen_inv_pows;
    while (static_cast<int>(v.size()) <= f.k()) v.push_back(v.back() * gen_inv_);
    gk = v[f.k()];
  }
  return r * gk;
}

Mat<RingElem> SubstitutionMap::apply(const Mat<RingElem>& M) const {
  return map_entries(M, [&](const RingElem& e) { return apply(e); });
}

SubstitutionMap SubstitutionMap::after(const SubstitutionMap& first) const {
  std::vector<RingElem> im;
  for (const auto& e : first.images_) im.push_back(apply(e));
  return SubstitutionMap(first.src_, first.frob_ + frob_, im);
}

SubstitutionMap restrict_to_gl1c(const RingPtr& gl2) {
  if (gl2->kind() != RingKind::GLn || gl2->n() != 2) throw DomainError("restriction to G' needs GL_2");
  RingPtr T = RingContext::gl1c(gl2->base());
  RingElem a = RingElem::variable(T, 0), b = RingElem::variable(T, 1);
  return SubstitutionMap(gl2, 0, {a, b, -b, a});
}

SubstitutionMap restrict_to_center(const RingPtr& gln) {
  if (gln->kind() != RingKind::GLn) throw DomainError("restriction to the center needs GL_n");
  RingPtr T = RingContext::center(gln->base(), gln->n());
  std::vector<RingElem> im;
  for (int i = 0; i < gln->n(); ++i)
    for (int j = 0; j < gln->n(); ++j) im.push_back(i == j ? RingElem::variable(T, 0) : RingElem(T));
  return SubstitutionMap(gln, 0, im);
}

SubstitutionMap restrict_to_torus(const RingPtr& gln) {
  if (gln->kind() != RingKind::GLn) throw DomainError("restriction to the torus needs GL_n");
  RingPtr T = RingContext::torus(gln->base(), gln->n());
  std::vector<RingElem> im;
  for (int i = 0; i < gln->n(); ++i)
    for (int j = 0; j < gln->n(); ++j) im.push_back(i == j ? RingElem::variable(T, i) : RingElem(T));
  return SubstitutionMap(gln, 0, im);
}

Poly reduce_mod_circle(const RingElem& f) {
  const RingPtr& R = f.ring();
  if (R->kind() != RingKind::GL1c) throw DomainError("circle reduction needs the G' ring");
  const BaseContext& B = R->B();
  const int d = B.degree();
  Poly one_minus = poly_sub(B, poly_int(B, 1), poly_pow(B, poly_var(B, 0), 2));
  std::vector<Poly> om{poly_int(B, 1)};
  Poly out;
  for (size_t t = 0; t < f.num().size(); ++t) {
    int a = mono_exp(f.num().mono[t], 0), b = mono_exp(f.num().mono[t], 1);
    while (static_cast<int>(om.size()) <= b / 2) om.push_back(poly_mul(B, om.back(), one_minus));
    Poly term = poly_term(B, mono_make({a, b % 2}), f.num().c(t, d));
    out = poly_add(B, out, poly_mul(B, term, om[b / 2]));
  }
  return out;
}

}  // namespace alc
