#include "alc/pointwise.hpp"

namespace alc {

namespace {

void require_rational(const MetricTuple& q) {
  if (q.base->kind() != FieldKind::Rational) throw DomainError("point evaluation needs a metric over Z_p");
}

ScalarMatrix scalar_pow(const ScalarMatrix& q, const ScalarMatrix& proto_mat, u64 e) {
  const PadicScalar& proto = proto_mat.a[0];
  return map_entries(q, [&](const PadicScalar& s) { return embed_scalar(proto, s).pow(e); });
}

}  // namespace

CtxPtr point_context(i64 p, int N, int r) { return BaseContext::make_extension(p, N, r); }

ScalarMatrix random_point(const CtxPtr& ctx, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> dist(0, ctx->modulus() - 1);
  for (;;) {
    ScalarMatrix x(n, PadicScalar(ctx));
    for (auto& e : x.a) {
      std::vector<u64> c(ctx->degree());
      for (auto& v : c) v = dist(rng);
      e = PadicScalar::from_raw(ctx, c);
    }
    if (det(x).is_unit()) return x;
  }
}

ScalarMatrix identity_point(const CtxPtr& ctx, int n) { return identity_like(PadicScalar(ctx), n); }

Frame<PadicScalar> solve_point(const ScalarMatrix& x, const MetricTuple& q) {
  require_rational(q);
  return solve_at(x, q);
}

std::vector<ScalarMatrix> lift_images(const Frame<PadicScalar>& F) {
  std::vector<ScalarMatrix> W;
  for (const auto& L : F.Lambda) W.push_back(F.xp * L);
  return W;
}

std::vector<ScalarMatrix> curvature_at(const ScalarMatrix& x0, const MetricTuple& q) {
  const int n = x0.n;
  if (x0.a[0].precision() < 2) throw PrecisionUnderflow("curvature needs precision >= 2");
  std::vector<ScalarMatrix> W = lift_images(solve_point(x0, q));
  // WW[i][j] = W_j(W_i(x0))
  std::vector<std::vector<ScalarMatrix>> WW(n);
  for (int i = 0; i < n; ++i) WW[i] = lift_images(solve_point(W[i], q));
  std::vector<ScalarMatrix> Phi;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Phi.push_back(mat_div_p_pow(WW[i][j] - WW[j][i], 1));
  return Phi;
}

void PointAggregator::add(int point, const std::vector<Check>& cs) {
  if (acc_.empty()) {
    acc_ = cs;
    for (auto& c : acc_) {
      c.detail.clear();
      if (!c.pass) c.witness = "point " + std::to_string(point) + ": " + c.witness;
    }
    return;
  }
  for (size_t t = 0; t < cs.size() && t < acc_.size(); ++t) {
    if (!cs[t].pass && acc_[t].pass) {
      acc_[t].pass = false;
      acc_[t].witness = "point " + std::to_string(point) + ": " + cs[t].witness;
    }
  }
}

std::vector<Check> PointAggregator::done(int points) const {
  std::vector<Check> out = acc_;
  for (auto& c : out) c.detail = std::to_string(points) + " points";
  return out;
}

std::vector<Check> verify_connection_pointwise(const MetricTuple& q, int N, const PointwiseOptions& opt) {
  require_rational(q);
  const int n = q.n;
  const i64 p = q.base->p();
  CtxPtr ctx = point_context(p, N + 1, opt.degree);
  std::mt19937_64 rng(opt.seed);
  PointAggregator agg;
  for (int t = 0; t < opt.points; ++t) {
    ScalarMatrix xhi = random_point(ctx, n, rng);
    ScalarMatrix x = mat_truncate(xhi, N);
    Frame<PadicScalar> F = solve_point(x, q);
    std::vector<Check> cs{verify_metric(F), verify_torsion(F)};
    Frame<PadicScalar> Fhi = solve_point(xhi, q);
    CheckBuilder st("precision-stability", "solve at N+1 truncated to N = solve at N");
    for (int i = 0; i < n; ++i) {
      ScalarMatrix down = mat_truncate(Fhi.Lambda[i], N);
      st.expect(mat_equal(down, F.Lambda[i]), [&] { return "Lambda_" + std::to_string(i + 1) + " differs"; });
    }
    cs.push_back(st.done());
    if (N >= 2) {
      auto G = christoffel(F, q);
      cs.push_back(verify_gamma_symmetry(G));
      cs.push_back(verify_christoffel_mod_p(G, first_order_C(F, q)));
    }
    agg.add(t, cs);
  }
  std::vector<Check> out = agg.done(opt.points);
  if (N >= 2) {
    MetricTuple qq = q.with_precision(N);
    Frame<PadicScalar> F1 = solve_point(identity_point(qq.base, n), qq);
    auto G = christoffel(F1, qq);
    out.push_back(verify_christoffel_at_identity(n, qq, [&](int i, int j, int k) {
      return truncate(G[i](j, k), 1).residue();
    }));
  }
  return out;
}

std::vector<Check> verify_curvature_pointwise(const MetricTuple& q, const PointwiseOptions& opt) {
  require_rational(q);
  if (!q.gauge_invariant()) throw DomainError("Riemann congruences need a vertical gauge invariant metric");
  const int n = q.n;
  const i64 p = q.base->p();
  const u64 pp = static_cast<u64>(p) * static_cast<u64>(p);
  MetricTuple q2 = q.with_precision(2);
  auto checks_at = [&](const ScalarMatrix& x0) {
    std::vector<ScalarMatrix> Phi = curvature_at(x0, q2);
    ScalarMatrix x1 = mat_truncate(x0, 1);
    ScalarMatrix xpp = mat_pth_power(x1, 2);
    ScalarMatrix qpp = scalar_pow(q2.q[0], x1, pp);
    std::vector<ScalarMatrix> R = riemann_from_phi(Phi, xpp, qpp);
    ScalarMatrix ric = ricci_from_phi(Phi, xpp);
    Frame<PadicScalar> F = solve_point(x0, q2);
    ScalarMatrix C = mat_truncate(first_order_C(F, q2)[0], 1);
    std::vector<Check> cs{check_phi_antisymmetry(Phi, n), check_riemann_mod_p(R, C, n)};
    for (auto& c : check_riemann_symmetries(R, n)) cs.push_back(c);
    cs.push_back(check_ricci_symmetry(ric));
    return std::make_pair(cs, R);
  };
  CtxPtr ctx = point_context(p, 2, opt.degree);
  std::mt19937_64 rng(opt.seed);
  PointAggregator agg;
  for (int t = 0; t < opt.points; ++t) agg.add(t, checks_at(random_point(ctx, n, rng)).first);
  std::vector<Check> out = agg.done(opt.points);

  auto at1 = checks_at(identity_point(q2.base, n));
  const auto& R1 = at1.second;
  out.push_back(check_riemann_at_identity(q2.q[0], [&](int i, int j, int m, int k) {
    return R1[static_cast<size_t>(i) * n + j](m, k).residue();
  }));
  std::vector<Check> pointchecks = at1.first;
  for (auto& c : pointchecks) {
    c.name += "-at-identity";
    out.push_back(c);
  }
  return out;
}

}  // namespace alc
