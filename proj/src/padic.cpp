#include "alc/padic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace alc {

// ---------------------------------------------------------------------------
// number theory

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = static_cast<u64>(static_cast<u128>(r) * b % m);
    b = static_cast<u64>(static_cast<u128>(b) * b % m);
    e >>= 1;
  }
  return r;
}

u64 ipow(u64 b, int e) {
  u64 r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

i64 mod_inverse(i64 a, i64 m) {
  i64 r0 = m, r1 = ((a % m) + m) % m, s0 = 0, s1 = 1;
  while (r1 != 0) {
    i64 q = r0 / r1;
    i64 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw NotAUnit("element " + std::to_string(a) + " is not invertible mod " + std::to_string(m));
  return ((s0 % m) + m) % m;
}

int euler_phi(int m) {
  int r = m, n = m;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      while (n % d == 0) n /= d;
      r -= r / d;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

std::vector<i64> cyclotomic_polynomial(int m) {
  if (m < 1) throw DomainError("cyclotomic conductor must be positive");
  std::vector<i64> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    std::vector<i64> den = cyclotomic_polynomial(d);
    // exact division by the monic polynomial den
    int dn = static_cast<int>(den.size()) - 1;
    int nn = static_cast<int>(num.size()) - 1;
    std::vector<i64> q(nn - dn + 1, 0);
    for (int k = nn; k >= dn; --k) {
      i64 c = num[k];
      q[k - dn] = c;
      if (c == 0) continue;
      for (int j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
    }
    num = q;
  }
  return num;
}

// ---------------------------------------------------------------------------
// univariate polynomials over Z/M, coefficients low to high

namespace {

using UPoly = std::vector<u64>;

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 mm(u64 a, u64 b, u64 M) { return static_cast<u64>(static_cast<u128>(a) * b % M); }

UPoly umul(const UPoly& a, const UPoly& b, u64 M) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mm(a[i], b[j], M)) % M;
  trim(r);
  return r;
}

UPoly usub(const UPoly& a, const UPoly& b, u64 M) {
  UPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    r[i] = (x + M - y) % M;
  }
  trim(r);
  return r;
}

UPoly uadd(const UPoly& a, const UPoly& b, u64 M) {
  UPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
    r[i] = (x + y) % M;
  }
  trim(r);
  return r;
}

UPoly uscale(const UPoly& a, u64 c, u64 M) {
  UPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mm(a[i], c, M);
  trim(r);
  return r;
}

// Division with remainder; the leading coefficient of b must be invertible mod M.
void udivmod(UPoly a, const UPoly& b, u64 M, UPoly* q, UPoly* r) {
  trim(a);
  int db = static_cast<int>(b.size()) - 1;
  u64 inv = static_cast<u64>(mod_inverse(static_cast<i64>(b.back()), static_cast<i64>(M)));
  UPoly qq;
  if (static_cast<int>(a.size()) - 1 >= db) qq.assign(a.size() - db, 0);
  for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
    u64 c = mm(a[k], inv, M);
    qq[k - db] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) a[k - db + j] = (a[k - db + j] + M - mm(c, b[j], M)) % M;
  }
  trim(a);
  trim(qq);
  if (q) *q = qq;
  if (r) *r = a;
}

UPoly umod(const UPoly& a, const UPoly& b, u64 M) {
  UPoly r;
  udivmod(a, b, M, nullptr, &r);
  return r;
}

UPoly umonic(const UPoly& a, u64 p) {
  u64 inv = static_cast<u64>(mod_inverse(static_cast<i64>(a.back()), static_cast<i64>(p)));
  return uscale(a, inv, p);
}

UPoly ugcd(UPoly a, UPoly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = umod(a, b, p);
    a = b;
    b = r;
  }
  if (a.empty()) return a;
  return umonic(a, p);
}

// s*a + t*b = gcd over F_p
UPoly uexgcd(UPoly a, UPoly b, u64 p, UPoly* s, UPoly* t) {
  UPoly s0{1}, s1{}, t0{}, t1{1};
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly q, r;
    udivmod(a, b, p, &q, &r);
    a = b;
    b = r;
    UPoly ns = usub(s0, umul(q, s1, p), p);
    s0 = s1;
    s1 = ns;
    UPoly nt = usub(t0, umul(q, t1, p), p);
    t0 = t1;
    t1 = nt;
  }
  u64 inv = static_cast<u64>(mod_inverse(static_cast<i64>(a.back()), static_cast<i64>(p)));
  *s = uscale(s0, inv, p);
  *t = uscale(t0, inv, p);
  return uscale(a, inv, p);
}

UPoly upowmod(UPoly b, u64 e, const UPoly& f, u64 p) {
  UPoly r{1};
  b = umod(b, f, p);
  while (e) {
    if (e & 1) r = umod(umul(r, b, p), f, p);
    b = umod(umul(b, b, p), f, p);
    e >>= 1;
  }
  return r;
}

// Equal-degree factorization over F_p (p odd) of a squarefree f whose
// irreducible factors all have degree r.
void edf(const UPoly& f, int r, u64 p, std::mt19937_64& rng, std::vector<UPoly>& out) {
  int n = static_cast<int>(f.size()) - 1;
  if (n == r) {
    out.push_back(f);
    return;
  }
  while (true) {
    UPoly a(n);
    for (auto& c : a) c = rng() % p;
    trim(a);
    if (a.empty()) continue;
    // a^{(p^r-1)/2} = (prod_{k<r} a^{p^k})^{(p-1)/2}
    UPoly prod{1}, ak = umod(a, f, p);
    for (int k = 0; k < r; ++k) {
      prod = umod(umul(prod, ak, p), f, p);
      ak = upowmod(ak, p, f, p);
    }
    UPoly b = upowmod(prod, (p - 1) / 2, f, p);
    b = usub(b, UPoly{1}, p);
    UPoly d = ugcd(f, b, p);
    int dd = static_cast<int>(d.size()) - 1;
    if (dd > 0 && dd < n) {
      UPoly q;
      udivmod(f, d, p, &q, nullptr);
      edf(d, r, p, rng, out);
      edf(umonic(q, p), r, p, rng, out);
      return;
    }
  }
}

int mult_order(i64 p, int m) {
  if (m <= 2) return 1;
  int k = 1;
  i64 v = p % m;
  while (v != 1) {
    v = v * p % m;
    ++k;
  }
  return k;
}

bool irreducible_mod_p(const UPoly& f, u64 p) {
  int n = static_cast<int>(f.size()) - 1;
  UPoly x{0, 1};
  UPoly xp = x;
  for (int i = 1; i <= n / 2; ++i) {
    xp = upowmod(xp, p, f, p);
    UPoly d = ugcd(f, usub(xp, x, p), p);
    if (d.size() > 1) return false;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// BaseContext

u64 BaseContext::reduce(i64 v) const {
  i64 m = static_cast<i64>(mod_);
  i64 r = v % m;
  return static_cast<u64>(r < 0 ? r + m : r);
}

u64 BaseContext::mulmod(u64 a, u64 b) const {
  if (mod_ < (u64(1) << 32)) return a * b % mod_;
  return static_cast<u64>(static_cast<u128>(a) * b % mod_);
}

void BaseContext::reduce_conv(u64* conv, u64* out) const {
  int d = degree();
  for (int k = 2 * d - 2; k >= d; --k) {
    u64 c = conv[k];
    if (c == 0) continue;
    for (int j = 0; j < d; ++j) {
      u64 s = mulmod(c, g_[j]);
      conv[k - d + j] = (conv[k - d + j] + mod_ - s) % mod_;
    }
  }
  for (int j = 0; j < d; ++j) out[j] = conv[j];
}

void BaseContext::mul_into(const u64* a, const u64* b, u64* out) const {
  int d = degree();
  if (d == 1) {
    out[0] = mulmod(a[0], b[0]);
    return;
  }
  u64 conv[2 * 16];
  std::vector<u64> big;
  u64* cv = conv;
  if (2 * d - 1 > 32) {
    big.assign(2 * d - 1, 0);
    cv = big.data();
  } else {
    std::fill(conv, conv + 2 * d - 1, 0);
  }
  for (int i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < d; ++j) cv[i + j] = (cv[i + j] + mulmod(a[i], b[j])) % mod_;
  }
  reduce_conv(cv, out);
}

void BaseContext::frob_apply(const u64* a, u64* out) const {
  int d = degree();
  if (d == 1) {
    out[0] = a[0];
    return;
  }
  std::vector<u64> acc(d, 0);
  for (int k = 0; k < d; ++k) {
    if (a[k] == 0) continue;
    for (int j = 0; j < d; ++j) acc[j] = (acc[j] + mulmod(a[k], frob_pows_[k][j])) % mod_;
  }
  std::copy(acc.begin(), acc.end(), out);
}

bool BaseContext::same_field(const BaseContext& o) const {
  if (p_ != o.p_ || spec_.kind != o.spec_.kind || spec_.m != o.spec_.m ||
      spec_.factor_index != o.spec_.factor_index || g_.size() != o.g_.size())
    return false;
  u64 M = std::min(mod_, o.mod_);
  for (size_t i = 0; i < g_.size(); ++i)
    if (g_[i] % M != o.g_[i] % M) return false;
  return true;
}

std::string BaseContext::describe() const {
  std::ostringstream os;
  os << "Z/" << p_ << "^" << N_;
  if (degree() > 1 || spec_.kind != FieldKind::Rational) {
    os << "[t]/(";
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
      if (g_[k] == 0) continue;
      if (!first) os << " + ";
      first = false;
      if (k == 0 || g_[k] != 1) os << g_[k];
      if (k > 0) os << (k == 0 || g_[k] != 1 ? "*" : "") << "t";
      if (k > 1) os << "^" << k;
    }
    os << ")";
  }
  return os.str();
}

CtxPtr BaseContext::build(i64 p, int N, FieldSpec spec, std::vector<u64> g_hi,
                          std::vector<u64> frob_hi, int N_hi) {
  auto* c = new BaseContext();
  c->p_ = p;
  c->N_ = N;
  c->mod_ = ipow(static_cast<u64>(p), N);
  c->spec_ = spec;
  c->g_hi_ = g_hi;
  c->frob_hi_ = frob_hi;
  c->N_hi_ = N_hi;
  c->g_.resize(g_hi.size());
  for (size_t i = 0; i < g_hi.size(); ++i) c->g_[i] = g_hi[i] % c->mod_;
  c->frob_.resize(frob_hi.size());
  for (size_t i = 0; i < frob_hi.size(); ++i) c->frob_[i] = frob_hi[i] % c->mod_;
  int d = c->degree();
  c->frob_pows_.assign(d, std::vector<u64>(d, 0));
  if (d >= 1) {
    c->frob_pows_[0][0] = 1 % c->mod_;
    for (int k = 1; k < d; ++k) c->mul_into(c->frob_pows_[k - 1].data(), c->frob_.data(), c->frob_pows_[k].data());
  }
  return CtxPtr(c);
}

CtxPtr BaseContext::with_precision(int N) const {
  if (N < 1) throw PrecisionUnderflow("precision must stay >= 1");
  if (N <= N_hi_) return build(p_, N, spec_, g_hi_, frob_hi_, N_hi_);
  if (spec_.kind == FieldKind::Unramified) return make_extension(p_, N, spec_.m);
  return make(p_, N, spec_);
}

namespace {

// Newton iteration for the root of g congruent to t^p mod p, computed in the
// ring (Z/p^N)[t]/(g) described by ctx (whose frob field may be provisional).
std::vector<u64> frobenius_root(const CtxPtr& ctx) {
  int d = ctx->degree();
  i64 p = ctx->p();
  PadicScalar t = PadicScalar::generator(ctx);
  PadicScalar r = t.pow(static_cast<u64>(p));
  std::vector<PadicScalar> gco;
  for (int j = 0; j <= d; ++j) gco.push_back(PadicScalar::from_raw(ctx, [&] {
    std::vector<u64> c(d, 0);
    c[0] = ctx->g()[j];
    return c;
  }()));
  for (int it = 0; it < ctx->N() + 2; ++it) {
    PadicScalar val(ctx), der(ctx);
    for (int j = d; j >= 0; --j) val = val * r + gco[j];
    for (int j = d; j >= 1; --j) der = der * r + gco[j].scaled(j);
    r = r - val * inverse(der);
  }
  return r.coeffs();
}

}  // namespace

CtxPtr BaseContext::make(i64 p, int N, FieldSpec spec) {
  if (p == 2) throw DomainError("p = 2 is not supported: the theory assumes p odd");
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  if (N < 1) throw DomainError("precision N must be >= 1");
  long double bound = 1;
  for (int i = 0; i < N + 4; ++i) bound *= static_cast<long double>(p);
  if (bound > static_cast<long double>(u64(1) << 62))
    throw DomainError("p^N too large for 64-bit residues");
  int N_hi = N + 4;
  if (spec.kind == FieldKind::Rational) {
    spec = FieldSpec::rational();
    return build(p, N, spec, {0, 1}, {0}, N_hi);
  }
  if (spec.kind != FieldKind::Cyclotomic) return make_extension(p, N, spec.m);
  int m = spec.m;
  if (m < 1) throw DomainError("cyclotomic conductor must be positive");
  if (m % p == 0)
    throw DomainError("p = " + std::to_string(p) + " divides m = " + std::to_string(m) + " (ramified)");
  std::vector<i64> phi = cyclotomic_polynomial(m);
  u64 P = static_cast<u64>(p);
  UPoly f(phi.size());
  for (size_t i = 0; i < phi.size(); ++i) f[i] = static_cast<u64>(((phi[i] % p) + p) % p);
  int r = mult_order(p, m);
  std::vector<UPoly> facs;
  std::mt19937_64 rng(0x5eed0000ull + static_cast<u64>(m) * 131 + P);
  edf(f, r, P, rng, facs);
  auto key = [&](const UPoly& a) {
    std::vector<u64> k;
    k.push_back((P - a[0]) % P);
    for (size_t i = 1; i + 1 < a.size(); ++i) k.push_back(a[i]);
    return k;
  };
  std::sort(facs.begin(), facs.end(), [&](const UPoly& a, const UPoly& b) { return key(a) < key(b); });
  if (spec.factor_index < 0 || spec.factor_index >= static_cast<int>(facs.size()))
    throw DomainError("factor_index out of range: Phi_" + std::to_string(m) + " has " +
                      std::to_string(facs.size()) + " factors mod " + std::to_string(p));
  UPoly g = facs[spec.factor_index];
  UPoly h;
  udivmod(f, g, P, &h, nullptr);
  UPoly s, t;
  uexgcd(g, h, P, &s, &t);  // s*g + t*h = 1
  u64 M = P;
  for (int k = 1; k < N_hi; ++k) {
    u64 M2 = M * P;
    UPoly F(phi.size());
    for (size_t i = 0; i < phi.size(); ++i) F[i] = static_cast<u64>(((phi[i] % static_cast<i64>(M2)) + static_cast<i64>(M2)) % static_cast<i64>(M2));
    UPoly e = usub(F, umul(g, h, M2), M2);
    for (auto& c : e) c = (c / M) % P;
    trim(e);
    UPoly dg = umod(umul(t, e, P), g, P);
    UPoly dh = umod(umul(s, e, P), h, P);
    g = uadd(g, uscale(dg, M, M2), M2);
    h = uadd(h, uscale(dh, M, M2), M2);
    M = M2;
  }
  g.resize(r + 1, 0);
  g[r] = 1;
  std::vector<u64> provisional(r, 0);
  CtxPtr tmp = build(p, N_hi, spec, g, provisional, N_hi);
  std::vector<u64> fr = frobenius_root(tmp);
  return build(p, N, spec, g, fr, N_hi);
}

CtxPtr BaseContext::make_extension(i64 p, int N, int r) {
  if (p == 2) throw DomainError("p = 2 is not supported: the theory assumes p odd");
  if (!is_prime(p)) throw DomainError("p is not prime");
  if (r < 1) throw DomainError("extension degree must be >= 1");
  int N_hi = N + 4;
  u64 P = static_cast<u64>(p);
  FieldSpec spec{FieldKind::Unramified, r, 0};
  if (r == 1) return build(p, N, spec, {0, 1}, {0}, N_hi);
  // first irreducible monic polynomial of degree r in a fixed enumeration
  UPoly f(r + 1, 0);
  f[r] = 1;
  u64 total = ipow(P, r);
  for (u64 idx = 0; idx < total; ++idx) {
    u64 v = idx;
    for (int i = 0; i < r; ++i) {
      f[i] = v % P;
      v /= P;
    }
    if (f[0] == 0) continue;
    if (irreducible_mod_p(f, P)) break;
  }
  std::vector<u64> provisional(r, 0);
  CtxPtr tmp = build(p, N_hi, spec, f, provisional, N_hi);
  std::vector<u64> fr = frobenius_root(tmp);
  return build(p, N, spec, f, fr, N_hi);
}

// ---------------------------------------------------------------------------
// PadicScalar

PadicScalar::PadicScalar(CtxPtr ctx) : ctx_(std::move(ctx)), c_(ctx_->degree(), 0) {}

PadicScalar PadicScalar::from_int(CtxPtr ctx, i64 v) {
  PadicScalar r(ctx);
  r.c_[0] = ctx->reduce(v);
  return r;
}

PadicScalar PadicScalar::from_coeffs(CtxPtr ctx, const std::vector<i64>& c) {
  // interpret as a polynomial in t and reduce mod g
  PadicScalar r(ctx), tp = from_int(ctx, 1), t = generator(ctx);
  for (i64 v : c) {
    r += tp.scaled(v);
    tp *= t;
  }
  return r;
}

PadicScalar PadicScalar::from_raw(CtxPtr ctx, std::vector<u64> c) {
  PadicScalar r;
  r.ctx_ = std::move(ctx);
  c.resize(r.ctx_->degree(), 0);
  for (auto& x : c) x %= r.ctx_->modulus();
  r.c_ = std::move(c);
  return r;
}

PadicScalar PadicScalar::generator(CtxPtr ctx) {
  PadicScalar r(ctx);
  int d = ctx->degree();
  if (d == 1) {
    r.c_[0] = (ctx->modulus() - ctx->g()[0]) % ctx->modulus();
  } else {
    r.c_[1] = 1;
  }
  return r;
}

void PadicScalar::check(const PadicScalar& o) const {
  if (ctx_.get() != o.ctx_.get() && !ctx_->same(*o.ctx_))
    throw ContextMismatch("scalar contexts differ: " + ctx_->describe() + " vs " + o.ctx_->describe());
}

bool PadicScalar::is_zero() const {
  for (u64 x : c_)
    if (x) return false;
  return true;
}

std::vector<u64> PadicScalar::residue() const {
  std::vector<u64> r(c_.size());
  u64 p = static_cast<u64>(ctx_->p());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] % p;
  return r;
}

bool PadicScalar::is_unit() const {
  for (u64 x : residue())
    if (x) return true;
  return false;
}

std::string PadicScalar::str() const {
  if (c_.size() == 1) return std::to_string(c_[0]);
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
  os << "]";
  return os.str();
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
  check(o);
  PadicScalar r = *this;
  u64 M = ctx_->modulus();
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = (c_[i] + o.c_[i]) % M;
  return r;
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const {
  check(o);
  PadicScalar r = *this;
  u64 M = ctx_->modulus();
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = (c_[i] + M - o.c_[i]) % M;
  return r;
}

PadicScalar PadicScalar::operator-() const {
  PadicScalar r = *this;
  u64 M = ctx_->modulus();
  for (auto& x : r.c_) x = (M - x) % M;
  return r;
}

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
  check(o);
  PadicScalar r(ctx_);
  ctx_->mul_into(c_.data(), o.c_.data(), r.c_.data());
  return r;
}

bool PadicScalar::operator==(const PadicScalar& o) const {
  check(o);
  return c_ == o.c_;
}

PadicScalar PadicScalar::pow(u64 e) const {
  PadicScalar r = from_int(ctx_, 1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

PadicScalar PadicScalar::scaled(i64 k) const {
  PadicScalar r = *this;
  u64 kk = ctx_->reduce(k);
  for (auto& x : r.c_) x = ctx_->mulmod(x, kk);
  return r;
}

PadicScalar frobenius_base(const PadicScalar& a) {
  PadicScalar r(a.ctx());
  std::vector<u64> out(a.coeffs().size());
  a.ctx()->frob_apply(a.coeffs().data(), out.data());
  return PadicScalar::from_raw(a.ctx(), out);
}

PadicScalar p_derivation_base(const PadicScalar& a) {
  if (a.precision() < 2) throw PrecisionUnderflow("p-derivation needs precision >= 2");
  PadicScalar diff = frobenius_base(a) - a.pow(static_cast<u64>(a.ctx()->p()));
  return div_p_pow(diff, 1);
}

PadicScalar inverse(const PadicScalar& a) {
  const CtxPtr& ctx = a.ctx();
  if (!a.is_unit()) throw NotAUnit("scalar " + a.str() + " is not a unit mod p");
  u64 p = static_cast<u64>(ctx->p());
  int d = ctx->degree();
  // residue inverse via extended Euclid in F_p[t]/(g mod p)
  UPoly gm(d + 1), am(d);
  for (int i = 0; i <= d; ++i) gm[i] = ctx->g()[i] % p;
  for (int i = 0; i < d; ++i) am[i] = a.coeffs()[i] % p;
  trim(am);
  UPoly s, t;
  uexgcd(am, gm, p, &s, &t);
  s.resize(d, 0);
  PadicScalar x = PadicScalar::from_raw(ctx, s);
  PadicScalar two = PadicScalar::from_int(ctx, 2);
  for (int prec = 1; prec < ctx->N(); prec *= 2) x = x * (two - a * x);
  return x;
}

std::vector<PadicScalar> half_binomials(const CtxPtr& ctx, int count, bool negative) {
  // Catalan numbers mod p^N by the convolution recurrence (no division).
  std::vector<PadicScalar> cat;
  cat.push_back(PadicScalar::from_int(ctx, 1));
  for (int n = 1; n <= count + 1; ++n) {
    PadicScalar s(ctx);
    for (int i = 0; i < n; ++i) s += cat[i] * cat[n - 1 - i];
    cat.push_back(s);
  }
  PadicScalar inv2 = inverse(PadicScalar::from_int(ctx, 2));
  std::vector<PadicScalar> out;
  for (int k = 0; k < count; ++k) {
    if (!negative) {
      // binom(1/2, k) = (-1)^{k+1} Cat(k-1) / 2^{2k-1}
      if (k == 0) {
        out.push_back(PadicScalar::from_int(ctx, 1));
        continue;
      }
      PadicScalar v = cat[k - 1] * inv2.pow(2 * k - 1);
      out.push_back(k % 2 == 1 ? v : -v);
    } else {
      // binom(-1/2, k) = (-1)^k (k+1) Cat(k) / 4^k
      PadicScalar v = cat[k].scaled(k + 1) * inv2.pow(2 * k);
      out.push_back(k % 2 == 0 ? v : -v);
    }
  }
  return out;
}

PadicScalar sqrt_unit(const PadicScalar& u) {
  std::vector<u64> res = u.residue();
  bool one = res[0] == 1;
  for (size_t i = 1; i < res.size(); ++i) one = one && res[i] == 0;
  if (!one) throw DomainError("sqrt_unit: argument " + u.str() + " is not congruent to 1 mod p");
  const CtxPtr& ctx = u.ctx();
  PadicScalar X = u - PadicScalar::from_int(ctx, 1);
  std::vector<PadicScalar> b = half_binomials(ctx, ctx->N(), false);
  PadicScalar s(ctx), Xk = PadicScalar::from_int(ctx, 1);
  for (int k = 0; k < ctx->N(); ++k) {
    s += b[k] * Xk;
    Xk *= X;
  }
  return s;
}

int legendre(i64 d, i64 p) {
  if (p == 2 || !is_prime(p)) throw DomainError("legendre symbol needs an odd prime");
  i64 r = ((d % p) + p) % p;
  if (r == 0) throw DomainError("legendre symbol undefined: p divides d");
  u64 e = powmod(static_cast<u64>(r), static_cast<u64>((p - 1) / 2), static_cast<u64>(p));
  return e == 1 ? 1 : -1;
}

PadicScalar div_p_pow(const PadicScalar& a, int nu) {
  if (nu == 0) return a;
  int N = a.precision();
  if (N - nu < 1) throw PrecisionUnderflow("division by p^" + std::to_string(nu) + " at precision " + std::to_string(N));
  u64 q = ipow(static_cast<u64>(a.ctx()->p()), nu);
  CtxPtr c2 = a.ctx()->with_precision(N - nu);
  std::vector<u64> out(a.coeffs().size());
  for (size_t i = 0; i < out.size(); ++i) {
    if (a.coeffs()[i] % q != 0)
      throw ExactDivisionFailure("scalar " + a.str() + " not divisible by p^" + std::to_string(nu));
    out[i] = a.coeffs()[i] / q;
  }
  return PadicScalar::from_raw(c2, out);
}

PadicScalar mul_p_pow(const PadicScalar& a, int nu, int target_N) {
  if (target_N > a.precision() + nu) throw PrecisionUnderflow("mul_p_pow cannot create precision");
  CtxPtr c2 = a.ctx()->with_precision(target_N);
  u64 q = ipow(static_cast<u64>(a.ctx()->p()), nu);
  std::vector<u64> out(a.coeffs().size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = c2->mulmod(a.coeffs()[i] % c2->modulus(), q % c2->modulus());
  return PadicScalar::from_raw(c2, out);
}

PadicScalar truncate(const PadicScalar& a, int N) {
  if (N == a.precision()) return a;
  if (N > a.precision()) throw PrecisionUnderflow("truncate cannot raise precision");
  return PadicScalar::from_raw(a.ctx()->with_precision(N), a.coeffs());
}

int valuation(const PadicScalar& a) {
  int N = a.precision();
  u64 p = static_cast<u64>(a.ctx()->p());
  int v = N;
  for (u64 c : a.coeffs()) {
    if (c == 0) continue;
    int k = 0;
    while (c % p == 0) {
      c /= p;
      ++k;
    }
    v = std::min(v, k);
  }
  return v;
}

// ---------------------------------------------------------------------------
// cyclotomic integers

std::vector<i64> CyclotomicInt::reduce_mod_phi(int m, std::vector<i64> v) {
  std::vector<i64> folded(m, 0);
  for (size_t k = 0; k < v.size(); ++k) folded[k % m] += v[k];
  std::vector<i64> phi = cyclotomic_polynomial(m);
  int d = static_cast<int>(phi.size()) - 1;
  for (int k = m - 1; k >= d; --k) {
    i64 c = folded[k];
    if (c == 0) continue;
    for (int j = 0; j <= d; ++j) folded[k - d + j] -= c * phi[j];
  }
  folded.resize(d);
  return folded;
}

CyclotomicInt::CyclotomicInt(int m) : m_(m), c_(euler_phi(m), 0) {
  if (m < 1) throw DomainError("cyclotomic conductor must be positive");
}

CyclotomicInt CyclotomicInt::from_int(int m, i64 v) {
  CyclotomicInt r(m);
  r.c_[0] = v;
  return r;
}

CyclotomicInt CyclotomicInt::from_coeffs(int m, const std::vector<i64>& c) {
  CyclotomicInt r(m);
  r.c_ = reduce_mod_phi(m, c);
  return r;
}

CyclotomicInt CyclotomicInt::zeta(int m) {
  std::vector<i64> c(2, 0);
  c[1] = 1;
  return from_coeffs(m, c);
}

bool CyclotomicInt::is_zero() const {
  for (i64 x : c_)
    if (x) return false;
  return true;
}

std::string CyclotomicInt::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
  os << "]";
  return os.str();
}

CyclotomicInt CyclotomicInt::operator+(const CyclotomicInt& o) const {
  if (m_ != o.m_) throw ContextMismatch("cyclotomic conductor mismatch");
  CyclotomicInt r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

CyclotomicInt CyclotomicInt::operator-(const CyclotomicInt& o) const {
  if (m_ != o.m_) throw ContextMismatch("cyclotomic conductor mismatch");
  CyclotomicInt r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

CyclotomicInt CyclotomicInt::operator-() const {
  CyclotomicInt r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CyclotomicInt CyclotomicInt::operator*(const CyclotomicInt& o) const {
  if (m_ != o.m_) throw ContextMismatch("cyclotomic conductor mismatch");
  std::vector<i64> prod(c_.size() + o.c_.size(), 0);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) prod[i + j] += c_[i] * o.c_[j];
  CyclotomicInt r(m_);
  r.c_ = reduce_mod_phi(m_, prod);
  return r;
}

GaloisElement GaloisElement::make(int m, int a) {
  if (m < 1) throw DomainError("conductor must be positive");
  int r = ((a % m) + m) % m;
  if (m == 1) r = 0;
  if (std::gcd(r, m) != 1) throw DomainError("Galois exponent " + std::to_string(a) + " not invertible mod " + std::to_string(m));
  return {m, m == 1 ? 1 : r};
}

GaloisElement GaloisElement::inverse() const {
  if (m <= 2) return *this;
  return make(m, static_cast<int>(mod_inverse(a, m)));
}

GaloisElement GaloisElement::compose(const GaloisElement& o) const {
  if (m != o.m) throw ContextMismatch("Galois elements of different conductors");
  return make(m, static_cast<int>((static_cast<i64>(a) * o.a) % std::max(m, 1)));
}

CyclotomicInt galois_apply_exp(int a, const CyclotomicInt& x) {
  int m = x.m_;
  std::vector<i64> v(m, 0);
  for (size_t k = 0; k < x.c_.size(); ++k) v[(static_cast<i64>(a) * static_cast<i64>(k)) % m] += x.c_[k];
  CyclotomicInt r(m);
  r.c_ = CyclotomicInt::reduce_mod_phi(m, v);
  return r;
}

CyclotomicInt galois_apply(const GaloisElement& s, const CyclotomicInt& x) {
  if (s.m != x.conductor()) throw ContextMismatch("Galois element and cyclotomic integer have different conductors");
  if (s.m == 1) return x;
  return galois_apply_exp(s.a, x);
}

PadicScalar embed(const CyclotomicInt& x, const CtxPtr& ctx) {
  int m = x.conductor();
  if (ctx->kind() == FieldKind::Rational) {
    if (m > 2) throw ContextMismatch("cannot embed Z[zeta_" + std::to_string(m) + "] into a rational context");
    return PadicScalar::from_int(ctx, x.coeffs()[0]);
  }
  if (ctx->kind() != FieldKind::Cyclotomic || ctx->conductor() != m)
    throw ContextMismatch("conductor mismatch: element has m = " + std::to_string(m) + ", context " + ctx->describe());
  return PadicScalar::from_coeffs(ctx, x.coeffs());
}

}  // namespace alc
