#include "alc/solver.hpp"

namespace alc {

namespace {

ScalarMatrix embed_matrix(const std::vector<CyclotomicInt>& e, int n, const CtxPtr& base) {
  ScalarMatrix m(n, PadicScalar(base));
  for (int t = 0; t < n * n; ++t) m.a[t] = embed(e[t], base);
  return m;
}

bool is_diagonal(const ScalarMatrix& q) {
  for (int i = 0; i < q.n; ++i)
    for (int j = 0; j < q.n; ++j)
      if (i != j && !q(i, j).is_zero()) return false;
  return true;
}

}  // namespace

MetricTuple MetricTuple::make(std::vector<ScalarMatrix> q) {
  if (q.empty()) throw DomainError("empty metric tuple");
  MetricTuple t;
  t.n = q[0].n;
  t.base = q[0].a[0].ctx();
  if (static_cast<int>(q.size()) != t.n) throw DomainError("metric tuple needs n matrices of size n x n");
  for (size_t i = 0; i < q.size(); ++i) {
    if (q[i].n != t.n) throw DomainError("metric matrices must all be n x n");
    for (int a = 0; a < t.n; ++a)
      for (int b = 0; b < t.n; ++b)
        if (q[i](a, b) != q[i](b, a))
          throw DomainError("metric q_" + std::to_string(i + 1) + " is not symmetric");
    if (!det(q[i]).is_unit()) throw NotAUnit("metric q_" + std::to_string(i + 1) + " has non-unit determinant");
  }
  t.q = std::move(q);
  return t;
}

MetricTuple MetricTuple::from_exact(const CtxPtr& base, int n, std::vector<std::vector<CyclotomicInt>> exact) {
  std::vector<ScalarMatrix> q;
  for (const auto& e : exact) {
    if (static_cast<int>(e.size()) != n * n) throw DomainError("metric entries must be n*n");
    q.push_back(embed_matrix(e, n, base));
  }
  MetricTuple t = make(std::move(q));
  t.exact = std::move(exact);
  return t;
}

MetricTuple MetricTuple::from_ints(const CtxPtr& base, int n, const std::vector<std::vector<i64>>& q) {
  int m = base->kind() == FieldKind::Cyclotomic ? base->conductor() : 1;
  std::vector<std::vector<CyclotomicInt>> ex;
  for (const auto& row : q) {
    std::vector<CyclotomicInt> e;
    for (i64 v : row) e.push_back(CyclotomicInt::from_int(m, v));
    ex.push_back(e);
  }
  return from_exact(base, n, ex);
}

MetricTuple MetricTuple::uniform(const ScalarMatrix& q) { return make(std::vector<ScalarMatrix>(q.n, q)); }

MetricTuple MetricTuple::with_precision(int N) const {
  if (N == base->N()) return *this;
  if (!exact.empty()) return from_exact(base->with_precision(N), n, exact);
  if (N > base->N()) throw PrecisionUnderflow("metric known only to precision " + std::to_string(base->N()));
  MetricTuple t = *this;
  t.base = base->with_precision(N);
  for (auto& m : t.q) m = truncate_matrix(m, N);
  return t;
}

bool MetricTuple::gauge_invariant() const {
  for (int i = 1; i < n; ++i)
    if (!mat_equal(q[i], q[0])) return false;
  return true;
}

ScalarMatrix scalar_matrix_from_ints(const CtxPtr& base, int n, const std::vector<i64>& rowmajor) {
  if (static_cast<int>(rowmajor.size()) != n * n) throw DomainError("expected n*n entries");
  ScalarMatrix m(n, PadicScalar(base));
  for (int t = 0; t < n * n; ++t) m.a[t] = PadicScalar::from_int(base, rowmajor[t]);
  return m;
}

ScalarMatrix frobenius_matrix(const ScalarMatrix& q) { return map_entries(q, frobenius_base); }

ScalarMatrix p_derivation_matrix(const ScalarMatrix& q) { return map_entries(q, p_derivation_base); }

ScalarMatrix truncate_matrix(const ScalarMatrix& q, int N) {
  return map_entries(q, [N](const PadicScalar& s) { return truncate(s, N); });
}

PadicScalar embed_scalar(const PadicScalar& proto, const PadicScalar& s) {
  const CtxPtr& C = proto.ctx();
  if (s.ctx()->same_field(*C)) return truncate(s, C->N());
  if (s.ctx()->degree() == 1) return PadicScalar::from_raw(C, {s.coeffs()[0] % C->modulus()});
  throw ContextMismatch("cannot embed " + s.ctx()->describe() + " into " + C->describe());
}

// ---------------------------------------------------------------------------

Connection::Connection(RingPtr R, MetricTuple q, Frame<RingElem> F)
    : R_(std::move(R)), q_(std::move(q)), F_(std::move(F)), lifts_(std::make_shared<Lifts>()) {
  lifts_->v.resize(F_.n);
}

const FrobeniusLift& Connection::lift(int i) const {
  std::lock_guard<std::mutex> lk(lifts_->mu);
  if (!lifts_->v[i]) lifts_->v[i] = std::make_unique<FrobeniusLift>(FrobeniusLift::make_lift(F_.Lambda[i]));
  return *lifts_->v[i];
}

ABPair build_AB(const RingPtr& R, const MetricTuple& q) {
  Frame<RingElem> F = build_frame(generic_matrix(R), q);
  return {F.A, F.B};
}

Connection solve(const MetricTuple& q, int N) {
  if (q.base->p() == 2) throw DomainError("p must be odd");
  if (N < 1) throw PrecisionUnderflow("precision must be >= 1");
  MetricTuple qq = q.with_precision(N);
  RingPtr R = RingContext::gln(qq.base, qq.n);
  Frame<RingElem> F = solve_at(generic_matrix(R), qq);
  return Connection(R, qq, std::move(F));
}

std::vector<RingMatrix> christoffel(const Connection& c) { return christoffel(c.frame(), c.metric()); }

std::vector<RingMatrix> first_order_C(const Connection& c) { return first_order_C(c.frame(), c.metric()); }

std::vector<Check> verify_connection(const Connection& c) {
  std::vector<Check> out{verify_metric(c.frame()), verify_torsion(c.frame())};
  if (c.N() >= 2) out.push_back(verify_gamma_symmetry(christoffel(c)));
  return out;
}

std::vector<Check> verify_congruence_christoffel(const Connection& c) {
  std::vector<RingMatrix> G = christoffel(c);
  std::vector<RingMatrix> C = first_order_C(c);
  std::vector<Check> out{verify_christoffel_mod_p(G, C)};
  out.push_back(verify_christoffel_at_identity(c.n(), c.metric(), [&](int i, int j, int k) {
    return reduce_mod_p_and_x1(G[i](j, k));
  }));
  return out;
}

PadicScalar det_lambda_constant(const ScalarMatrix& q) {
  const CtxPtr& ctx = q.a[0].ctx();
  const int N = ctx->N();
  if (N < 2) return PadicScalar::from_int(ctx, 1);
  ScalarMatrix qp = map_entries(q, [](const PadicScalar& s) { return s.pow(static_cast<u64>(s.ctx()->p())); });
  ScalarMatrix pdq = map_entries(p_derivation_matrix(q), [N](const PadicScalar& s) { return mul_p_pow(s, 1, N); });
  ScalarMatrix M = identity_like(q.a[0], q.n) + inverse(qp) * pdq;
  return sqrt_unit(inverse(det(M)));
}

PadicScalar n1_closed_form(const PadicScalar& d) {
  return sqrt_unit(d.pow(static_cast<u64>(d.ctx()->p())) * inverse(frobenius_base(d)));
}

PadicScalar n1_legendre_form(const PadicScalar& d) {
  const CtxPtr& ctx = d.ctx();
  if (ctx->degree() != 1) throw DomainError("Legendre form needs d in Z_p");
  i64 p = ctx->p();
  i64 r = static_cast<i64>(d.coeffs()[0] % static_cast<u64>(p));
  return d.pow(static_cast<u64>((p - 1) / 2)).scaled(legendre(r, p));
}

std::vector<Check> verify_det_lambda(const Connection& c, Situation s) {
  const MetricTuple& q = c.metric();
  if (s == Situation::Torus)
    for (int i = 0; i < c.n(); ++i)
      if (!is_diagonal(q.q[i])) throw DomainError("torus situation needs diagonal metrics");
  SubstitutionMap res = s == Situation::Center ? restrict_to_center(c.ring()) : restrict_to_torus(c.ring());
  const std::string where = s == Situation::Center ? "center" : "torus";
  CheckBuilder cdet("det-lambda-" + where, "det(Lambda) = det(1 + p (q^(p))^-1 dq)^(-1/2) mod J");
  CheckBuilder ctr("trace-lambda-" + where, "tr((Lambda-1)/p) = -tr((q^(p))^-1 dq)/2 mod (p, J)");
  CheckBuilder cleg("det-lambda-legendre-" + where, "det(Lambda) = (det q / p) det(q)^((p-1)/2) mod J");
  const RingPtr& T = res.dst();
  const bool legendre_case = s == Situation::Torus && q.base->degree() == 1;
  for (int i = 0; i < c.n(); ++i) {
    RingMatrix L = res.apply(c.lambda(i));
    RingElem dl = det(L);
    PadicScalar want = det_lambda_constant(q.q[i]);
    RingElem diff = dl - RingElem::scalar(T, want);
    cdet.expect(diff.is_zero(), [&] { return "i=" + std::to_string(i + 1) + ": " + diff.str(10); });
    if (legendre_case) {
      PadicScalar lg = n1_legendre_form(det(q.q[i]));
      RingElem d2 = dl - RingElem::scalar(T, lg);
      cleg.expect(d2.is_zero(), [&] { return "i=" + std::to_string(i + 1) + ": " + d2.str(10); });
    }
    if (c.N() >= 2) {
      RingElem tr(T);
      for (int a = 0; a < c.n(); ++a) tr += L(a, a) - RingElem::constant(T, 1);
      tr = div_p_pow(tr, 1);
      MetricTuple q2 = q.with_precision(2);
      ScalarMatrix qp = map_entries(q2.q[i], [](const PadicScalar& x) { return x.pow(static_cast<u64>(x.ctx()->p())); });
      ScalarMatrix prod = truncate_matrix(inverse(qp), 1) * p_derivation_matrix(q2.q[i]);
      PadicScalar t(prod.a[0].ctx());
      for (int a = 0; a < c.n(); ++a) t += prod(a, a);
      t = -t.scaled(static_cast<i64>((t.ctx()->modulus() + 1) / 2));
      RingElem d3 = truncate(tr, 1) - RingElem::scalar(T->with_precision(1), t);
      ctr.expect(is_zero_mod_p(d3), [&] { return "i=" + std::to_string(i + 1) + ": " + d3.str(10); });
    }
  }
  std::vector<Check> out{cdet.done()};
  if (c.N() >= 2) out.push_back(ctr.done());
  if (legendre_case) out.push_back(cleg.done());
  return out;
}

MetricTuple vertical_setup(const std::vector<std::vector<CyclotomicInt>>& q, const VerticalGauge& gauge,
                           const CtxPtr& base) {
  int n = static_cast<int>(q.size());
  if (static_cast<int>(gauge.exponents.size()) != n) throw DomainError("gauge needs one Galois element per index");
  if (GaloisElement::make(gauge.m, gauge.exponents[0]).a != GaloisElement::make(gauge.m, 1).a)
    throw DomainError("vertical gauge must have sigma_1 = id");
  std::vector<std::vector<CyclotomicInt>> ex;
  for (int i = 0; i < n; ++i) {
    GaloisElement si = GaloisElement::make(gauge.m, gauge.exponents[i]).inverse();
    std::vector<CyclotomicInt> e;
    for (int a = 0; a < n; ++a) {
      if (static_cast<int>(q[a].size()) != n) throw DomainError("metric must be square");
      for (int b = 0; b < n; ++b) {
        if (q[a][b] != q[b][a]) throw DomainError("metric must be symmetric");
        e.push_back(galois_apply(si, q[a][b]));
      }
    }
    ex.push_back(e);
  }
  return MetricTuple::from_exact(base, n, ex);
}

std::vector<Check> verify_vertical_congruences(const std::vector<std::vector<CyclotomicInt>>& q, const VerticalGauge& gauge,
                                 const CtxPtr& base) {
  MetricTuple t = vertical_setup(q, gauge, base);
  Connection c = solve(t, base->N());
  std::vector<Check> out = verify_connection(c);
  for (auto& ch : verify_congruence_christoffel(c)) out.push_back(ch);
  for (auto& ch : out) ch.name = "vertical-" + ch.name;
  return out;
}

}  // namespace alc
