#include "alc/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace alc {

namespace {

constexpr int kDegShift = kMaxVars * kExpBits;  // 108
constexpr Mono kOne = 1;

int shift_of(int v) { return kExpBits * (kMaxVars - 1 - v); }

Mono guard_mask() {
  Mono g = 0;
  for (int v = 0; v < kMaxVars; ++v) g |= kOne << (shift_of(v) + kExpBits - 1);
  return g;
}

const Mono kGuard = guard_mask();
const Mono kEmpty = ~Mono(0);

inline size_t mono_hash(Mono m) {
  u64 lo = static_cast<u64>(m), hi = static_cast<u64>(m >> 64);
  u64 h = (lo ^ (hi * 0x9E3779B97F4A7C15ull)) * 0xBF58476D1CE4E5B9ull;
  return static_cast<size_t>(h ^ (h >> 31));
}

size_t next_pow2(size_t x) {
  size_t r = 16;
  while (r < x) r <<= 1;
  return r;
}

struct SortItem {
  Mono m;
  u64 idx;
};

}  // namespace

Mono mono_make(const std::vector<int>& e) {
  if (e.size() > static_cast<size_t>(kMaxVars)) throw DomainError("too many variables");
  Mono m = 0;
  int deg = 0;
  for (size_t v = 0; v < e.size(); ++v) {
    if (e[v] < 0 || e[v] > kMaxExp) throw DomainError("exponent out of range");
    m |= static_cast<Mono>(e[v]) << shift_of(static_cast<int>(v));
    deg += e[v];
  }
  m |= static_cast<Mono>(deg) << kDegShift;
  return m;
}

int mono_exp(Mono m, int v) { return static_cast<int>((m >> shift_of(v)) & ((1u << kExpBits) - 1)); }

int mono_degree(Mono m) { return static_cast<int>(m >> kDegShift); }

Mono mono_mul(Mono a, Mono b) {
  Mono r = a + b;
  if (r & kGuard) throw DomainError("monomial exponent overflow (limit " + std::to_string(kMaxExp) + ")");
  return r;
}

bool mono_divides(Mono a, Mono b) {
  for (int v = 0; v < kMaxVars; ++v)
    if (mono_exp(a, v) > mono_exp(b, v)) return false;
  return true;
}

Mono mono_div(Mono b, Mono a) { return b - a; }

std::vector<int> mono_exps(Mono m, int nvars) {
  std::vector<int> e(nvars);
  for (int v = 0; v < nvars; ++v) e[v] = mono_exp(m, v);
  return e;
}

Poly poly_constant(const BaseContext& R, const u64* c) {
  int d = R.degree();
  Poly f;
  bool nz = false;
  for (int i = 0; i < d; ++i) nz = nz || (c[i] % R.modulus()) != 0;
  if (!nz) return f;
  f.mono.push_back(0);
  for (int i = 0; i < d; ++i) f.coef.push_back(c[i] % R.modulus());
  return f;
}

Poly poly_int(const BaseContext& R, i64 v) {
  std::vector<u64> c(R.degree(), 0);
  c[0] = R.reduce(v);
  return poly_constant(R, c.data());
}

Poly poly_scalar(const PadicScalar& s) { return poly_constant(*s.ctx(), s.coeffs().data()); }

Poly poly_term(const BaseContext& R, Mono m, const u64* c) {
  Poly f = poly_constant(R, c);
  if (!f.empty()) f.mono[0] = m;
  return f;
}

Poly poly_var(const BaseContext& R, int v) {
  std::vector<int> e(v + 1, 0);
  e[v] = 1;
  std::vector<u64> c(R.degree(), 0);
  c[0] = 1 % R.modulus();
  return poly_term(R, mono_make(e), c.data());
}

namespace {

template <bool Sub>
Poly merge(const BaseContext& R, const Poly& f, const Poly& g) {
  const int d = R.degree();
  const u64 M = R.modulus();
  Poly r;
  r.mono.reserve(f.size() + g.size());
  r.coef.reserve((f.size() + g.size()) * d);
  size_t i = 0, j = 0;
  std::vector<u64> tmp(d);
  while (i < f.size() || j < g.size()) {
    if (j >= g.size() || (i < f.size() && f.mono[i] > g.mono[j])) {
      r.mono.push_back(f.mono[i]);
      r.coef.insert(r.coef.end(), f.c(i, d), f.c(i, d) + d);
      ++i;
    } else if (i >= f.size() || g.mono[j] > f.mono[i]) {
      r.mono.push_back(g.mono[j]);
      const u64* gc = g.c(j, d);
      for (int k = 0; k < d; ++k) r.coef.push_back(Sub ? (M - gc[k]) % M : gc[k]);
      ++j;
    } else {
      bool nz = false;
      const u64 *fc = f.c(i, d), *gc = g.c(j, d);
      for (int k = 0; k < d; ++k) {
        tmp[k] = Sub ? (fc[k] + M - gc[k]) % M : (fc[k] + gc[k]) % M;
        nz = nz || tmp[k];
      }
      if (nz) {
        r.mono.push_back(f.mono[i]);
        r.coef.insert(r.coef.end(), tmp.begin(), tmp.end());
      }
      ++i;
      ++j;
    }
  }
  return r;
}

}  // namespace

Poly poly_add(const BaseContext& R, const Poly& f, const Poly& g) {
  if (f.empty()) return g;
  if (g.empty()) return f;
  return merge<false>(R, f, g);
}

Poly poly_sub(const BaseContext& R, const Poly& f, const Poly& g) {
  if (g.empty()) return f;
  return merge<true>(R, f, g);
}

Poly poly_neg(const BaseContext& R, const Poly& f) {
  Poly r = f;
  u64 M = R.modulus();
  for (auto& c : r.coef) c = (M - c) % M;
  return r;
}

std::vector<u64> poly_max_exps(const Poly& f, int nvars) {
  std::vector<u64> e(nvars, 0);
  for (Mono m : f.mono)
    for (int v = 0; v < nvars; ++v) e[v] = std::max<u64>(e[v], static_cast<u64>(mono_exp(m, v)));
  return e;
}

Poly poly_mul(const BaseContext& R, const Poly& f0, const Poly& g0) {
  if (f0.empty() || g0.empty()) return {};
  const Poly& f = f0.size() <= g0.size() ? f0 : g0;
  const Poly& g = f0.size() <= g0.size() ? g0 : f0;
  const int d = R.degree();
  const u64 M = R.modulus();
  {
    std::vector<u64> ef = poly_max_exps(f, kMaxVars), eg = poly_max_exps(g, kMaxVars);
    for (int v = 0; v < kMaxVars; ++v)
      if (ef[v] + eg[v] > static_cast<u64>(kMaxExp))
        throw DomainError("monomial exponent overflow (limit " + std::to_string(kMaxExp) + ")");
  }
  if (f.size() == 1) {
    Poly r;
    r.mono.reserve(g.size());
    r.coef.reserve(g.size() * d);
    std::vector<u64> tmp(d);
    for (size_t j = 0; j < g.size(); ++j) {
      R.mul_into(f.c(0, d), g.c(j, d), tmp.data());
      bool nz = false;
      for (int k = 0; k < d; ++k) nz = nz || tmp[k];
      if (!nz) continue;
      r.mono.push_back(f.mono[0] + g.mono[j]);
      r.coef.insert(r.coef.end(), tmp.begin(), tmp.end());
    }
    return r;
  }
  const int w = d == 1 ? 1 : 2 * d - 1;
  long double bound = static_cast<long double>(M - 1) * static_cast<long double>(M - 1) *
                      static_cast<long double>(f.size()) * d;
  const bool lazy = bound < 1.8e19L;

  size_t cap = next_pow2(std::min(f.size() * g.size(), 2 * (f.size() + g.size()) + 64) * 2);
  std::vector<Mono> keys(cap, kEmpty);
  std::vector<u64> slot(cap);
  std::vector<Mono> outm;
  std::vector<u64> acc;
  outm.reserve(cap / 2);
  acc.reserve(cap / 2 * w);
  size_t mask = cap - 1;

  auto rehash = [&]() {
    cap *= 2;
    mask = cap - 1;
    keys.assign(cap, kEmpty);
    slot.assign(cap, 0);
    for (size_t t = 0; t < outm.size(); ++t) {
      size_t h = mono_hash(outm[t]) & mask;
      while (keys[h] != kEmpty) h = (h + 1) & mask;
      keys[h] = outm[t];
      slot[h] = t;
    }
  };

  for (size_t i = 0; i < f.size(); ++i) {
    const Mono fm = f.mono[i];
    const u64* fc = f.c(i, d);
    for (size_t j = 0; j < g.size(); ++j) {
      const Mono m = fm + g.mono[j];
      size_t h = mono_hash(m) & mask;
      u64 t;
      while (true) {
        if (keys[h] == m) {
          t = slot[h];
          break;
        }
        if (keys[h] == kEmpty) {
          t = outm.size();
          keys[h] = m;
          slot[h] = t;
          outm.push_back(m);
          acc.resize(acc.size() + w, 0);
          if (outm.size() * 2 > cap) rehash();
          break;
        }
        h = (h + 1) & mask;
      }
      u64* a = acc.data() + t * w;
      const u64* gc = g.c(j, d);
      if (d == 1) {
        if (lazy)
          a[0] += fc[0] * gc[0];
        else
          a[0] = (a[0] + R.mulmod(fc[0], gc[0])) % M;
      } else {
        for (int x = 0; x < d; ++x) {
          if (fc[x] == 0) continue;
          for (int y = 0; y < d; ++y) {
            if (lazy)
              a[x + y] += fc[x] * gc[y];
            else
              a[x + y] = (a[x + y] + R.mulmod(fc[x], gc[y])) % M;
          }
        }
      }
    }
  }

  std::vector<SortItem> items;
  items.reserve(outm.size());
  std::vector<u64> red(d);
  for (size_t t = 0; t < outm.size(); ++t) {
    u64* a = acc.data() + t * w;
    for (int k = 0; k < w; ++k) a[k] %= M;
    if (d > 1) {
      R.reduce_conv(a, red.data());
      std::copy(red.begin(), red.end(), a);
    }
    bool nz = false;
    for (int k = 0; k < d; ++k) nz = nz || a[k];
    if (nz) items.push_back({outm[t], t});
  }
  std::sort(items.begin(), items.end(), [](const SortItem& x, const SortItem& y) { return x.m > y.m; });
  Poly r;
  r.mono.resize(items.size());
  r.coef.resize(items.size() * d);
  for (size_t k = 0; k < items.size(); ++k) {
    r.mono[k] = items[k].m;
    std::copy(acc.data() + items[k].idx * w, acc.data() + items[k].idx * w + d, r.coef.data() + k * d);
  }
  return r;
}

Poly poly_pow(const BaseContext& R, const Poly& f, int e) {
  Poly r = poly_int(R, 1), b = f;
  while (e > 0) {
    if (e & 1) r = poly_mul(R, r, b);
    e >>= 1;
    if (e) b = poly_mul(R, b, b);
  }
  return r;
}

Poly poly_scale(const BaseContext& R, const Poly& f, const u64* c) {
  const int d = R.degree();
  Poly r;
  r.mono.reserve(f.size());
  r.coef.reserve(f.coef.size());
  std::vector<u64> tmp(d);
  for (size_t i = 0; i < f.size(); ++i) {
    R.mul_into(f.c(i, d), c, tmp.data());
    bool nz = false;
    for (int k = 0; k < d; ++k) nz = nz || tmp[k];
    if (!nz) continue;
    r.mono.push_back(f.mono[i]);
    r.coef.insert(r.coef.end(), tmp.begin(), tmp.end());
  }
  return r;
}

Poly poly_scale_int(const BaseContext& R, const Poly& f, i64 k) {
  std::vector<u64> c(R.degree(), 0);
  c[0] = R.reduce(k);
  return poly_scale(R, f, c.data());
}

Poly poly_mono_mul(const BaseContext& R, const Poly& f, Mono m) {
  (void)R;
  Poly r = f;
  for (auto& x : r.mono) x = mono_mul(x, m);
  return r;
}

Poly poly_frobenius_coeffs(const BaseContext& R, const Poly& f) {
  const int d = R.degree();
  if (d == 1) return f;
  Poly r = f;
  for (size_t i = 0; i < f.size(); ++i) R.frob_apply(f.c(i, d), r.coef.data() + i * d);
  return r;
}

namespace {

Poly rebuild(const Poly& f, int d, const std::vector<u64>& coef) {
  Poly r;
  for (size_t i = 0; i < f.size(); ++i) {
    bool nz = false;
    for (int k = 0; k < d; ++k) nz = nz || coef[i * d + k];
    if (!nz) continue;
    r.mono.push_back(f.mono[i]);
    r.coef.insert(r.coef.end(), coef.begin() + i * d, coef.begin() + (i + 1) * d);
  }
  return r;
}

}  // namespace

Poly poly_truncate(const BaseContext& to, const Poly& f) {
  std::vector<u64> c(f.coef.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = f.coef[i] % to.modulus();
  return rebuild(f, to.degree(), c);
}

bool poly_divisible_by_p_pow(const BaseContext& R, const Poly& f, int nu) {
  u64 q = ipow(static_cast<u64>(R.p()), nu);
  for (u64 c : f.coef)
    if (c % q) return false;
  return true;
}

Poly poly_div_p_pow(const BaseContext& from, const BaseContext& to, const Poly& f, int nu) {
  u64 q = ipow(static_cast<u64>(from.p()), nu);
  std::vector<u64> c(f.coef.size());
  for (size_t i = 0; i < c.size(); ++i) {
    if (f.coef[i] % q) throw ExactDivisionFailure("polynomial not divisible by p^" + std::to_string(nu));
    c[i] = (f.coef[i] / q) % to.modulus();
  }
  return rebuild(f, to.degree(), c);
}

Poly poly_mul_p_pow(const BaseContext& from, const BaseContext& to, const Poly& f, int nu) {
  (void)from;
  u64 q = ipow(static_cast<u64>(to.p()), nu) % to.modulus();
  std::vector<u64> c(f.coef.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = to.mulmod(f.coef[i] % to.modulus(), q);
  return rebuild(f, to.degree(), c);
}

Poly poly_residue(const BaseContext& R, const Poly& f) {
  u64 p = static_cast<u64>(R.p());
  std::vector<u64> c(f.coef.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = f.coef[i] % p;
  return rebuild(f, R.degree(), c);
}

bool poly_divexact(const BaseContext& R, const Poly& f, const Poly& g, Poly* q) {
  const int d = R.degree();
  const u64 M = R.modulus();
  if (g.empty()) throw DomainError("division by zero polynomial");
  const u64* lc = g.c(0, d);
  if (lc[0] % M != 1 % M) throw DomainError("poly_divexact needs leading coefficient 1");
  for (int k = 1; k < d; ++k)
    if (lc[k] % M) throw DomainError("poly_divexact needs leading coefficient 1");
  std::map<Mono, std::vector<u64>, std::greater<Mono>> rem;
  for (size_t i = 0; i < f.size(); ++i) rem[f.mono[i]] = std::vector<u64>(f.c(i, d), f.c(i, d) + d);
  Poly quo;
  std::vector<u64> tmp(d);
  const Mono lm = g.mono[0];
  while (!rem.empty()) {
    auto it = rem.begin();
    Mono m = it->first;
    std::vector<u64> c = it->second;
    rem.erase(it);
    bool nz = false;
    for (u64 x : c) nz = nz || x;
    if (!nz) continue;
    if (!mono_divides(lm, m)) return false;
    Mono qm = mono_div(m, lm);
    quo.mono.push_back(qm);
    quo.coef.insert(quo.coef.end(), c.begin(), c.end());
    for (size_t j = 1; j < g.size(); ++j) {
      R.mul_into(c.data(), g.c(j, d), tmp.data());
      Mono t = mono_mul(qm, g.mono[j]);
      auto& slot = rem[t];
      if (slot.empty()) slot.assign(d, 0);
      for (int k = 0; k < d; ++k) slot[k] = (slot[k] + M - tmp[k]) % M;
    }
  }
  if (q) *q = quo;
  return true;
}

bool poly_equal(const Poly& f, const Poly& g) { return f.mono == g.mono && f.coef == g.coef; }

std::string poly_to_string(const BaseContext& R, const Poly& f, const std::vector<std::string>& names,
                           size_t max_terms) {
  if (f.empty()) return "0";
  const int d = R.degree();
  std::ostringstream os;
  size_t shown = max_terms ? std::min(max_terms, f.size()) : f.size();
  for (size_t i = 0; i < shown; ++i) {
    if (i) os << " + ";
    const u64* c = f.c(i, d);
    if (d == 1) {
      os << c[0];
    } else {
      os << "[";
      for (int k = 0; k < d; ++k) os << (k ? "," : "") << c[k];
      os << "]";
    }
    for (size_t v = 0; v < names.size(); ++v) {
      int e = mono_exp(f.mono[i], static_cast<int>(v));
      if (e == 0) continue;
      os << "*" << names[v];
      if (e > 1) os << "^" << e;
    }
  }
  if (shown < f.size()) os << " + ... (" << (f.size() - shown) << " more terms)";
  return os.str();
}

}  // namespace alc
