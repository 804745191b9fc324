#include "alc/conformal.hpp"

namespace alc {

namespace {

RingElem sc(const RingPtr& R, const PadicScalar& s) { return RingElem::scalar(R, s); }

// (1 + X)^(1/2) for X = 0 mod p, as the truncated binomial series.
RingElem sqrt_one_plus(const RingElem& X) {
  if (!is_zero_mod_p(X)) throw Error("radical is not 1 mod p");
  const RingPtr& R = X.ring();
  std::vector<PadicScalar> c = half_binomials(R->base(), R->N(), false);
  RingElem s = RingElem::constant(R, 0), Xk = RingElem::constant(R, 1);
  for (int k = 0; k < R->N(); ++k) {
    s += Xk.scaled(c[k]);
    Xk = reduce_fraction(Xk * X);
  }
  return reduce_fraction(s);
}

RingMatrix rotation(const RingElem& u, const RingElem& v) {
  RingMatrix M(2, u);
  M(0, 1) = v;
  M(1, 0) = -v;
  M(1, 1) = u;
  return M;
}

}  // namespace

RingElem equal_case_v(const RingElem& theta) {
  const RingPtr& R = theta.ring();
  RingElem one = RingElem::constant(R, 1);
  RingElem eta = div_p_pow(theta - one, 1);
  RingElem X = mul_p_pow(eta.scaled(2), 1, R->N());
  return reduce_fraction(half(sqrt_one_plus(X) - one));
}

ConformalData solve_conformal(const PadicScalar& d1, const PadicScalar& d2) {
  if (!d1.is_unit() || !d2.is_unit()) throw DomainError("d_1, d_2 must be units");
  const CtxPtr& ctx = d1.ctx();
  const int p = static_cast<int>(ctx->p());
  ConformalData cd;
  cd.ring = RingContext::gl1c(ctx);
  const RingPtr& R = cd.ring;
  cd.d1 = d1;
  cd.d2 = d2;
  RingElem a = RingElem::variable(R, 0), b = RingElem::variable(R, 1);
  RingElem one = RingElem::constant(R, 1);
  RingElem gp = RingElem::gen(R).pow(p);
  RingElem Pinv = invert_unit(a.pow(2 * p) + b.pow(2 * p));
  auto theta = [&](const PadicScalar& d) {
    PadicScalar f = d.pow(static_cast<u64>(p)) * inverse(frobenius_base(d));
    return reduce_fraction((gp * Pinv).scaled(f));
  };
  cd.theta1 = theta(d1);
  cd.theta2 = theta(d2);
  cd.eps = frobenius_base(d2 * inverse(d1));
  RingElem E = sc(R, cd.eps);

  // Subtracting the two equations: 2 eps (x1 + x2) = eps^2 (theta_2 - 1) - (theta_1 - 1).
  RingElem L = E * E * (cd.theta2 - one) - (cd.theta1 - one);
  RingElem c = reduce_fraction(L.scaled(inverse(cd.eps.scaled(2))));
  // With x2 = c - x1 the first equation becomes A x1^2 + B x1 + C0 = 0; B is a
  // unit and C0 = 0 mod p, so the small root is -2 C0 / (B (1 + sqrt(1 - 4 A C0 / B^2))).
  RingElem A = one + E * E;
  RingElem B = reduce_fraction((E * (one - E * c)).scaled(2));
  RingElem C0 = reduce_fraction(E * E * c * c - (E * c).scaled(2) - (cd.theta1 - one));
  RingElem Binv = invert_unit(B);
  RingElem X = reduce_fraction((A * C0 * Binv * Binv).scaled(-4));
  RingElem S = sqrt_one_plus(X);
  cd.v1 = reduce_fraction((C0 * Binv * invert_unit(one + S)).scaled(-2));
  cd.v2 = reduce_fraction(c - cd.v1);
  cd.u2 = reduce_fraction(one + cd.v1.scaled(inverse(cd.eps)));
  cd.u1 = reduce_fraction(one - E * cd.v2);

  RingElem x = RingElem::constant(R, 0);
  for (int it = 0; it <= R->N(); ++it) {
    RingElem f = A * x * x + B * x + C0;
    RingElem df = (A * x).scaled(2) + B;
    x = reduce_fraction(x - f * invert_unit(df));
  }
  cd.v1_newton = x;
  return cd;
}

ConformalData solve_conformal(i64 d1, i64 d2, i64 p, int N) {
  CtxPtr ctx = BaseContext::make(p, N);
  return solve_conformal(PadicScalar::from_int(ctx, d1), PadicScalar::from_int(ctx, d2));
}

std::vector<FrobeniusLift> closed_form_lifts(const ConformalData& cd) {
  const RingPtr& R = cd.ring;
  const int p = static_cast<int>(R->p());
  RingElem ap = RingElem::variable(R, 0).pow(p), bp = RingElem::variable(R, 1).pow(p);
  std::vector<FrobeniusLift> out;
  for (int i = 0; i < 2; ++i) {
    const RingElem& u = i == 0 ? cd.u1 : cd.u2;
    const RingElem& v = i == 0 ? cd.v1 : cd.v2;
    out.push_back(FrobeniusLift::from_images(R, {reduce_fraction(ap * u - bp * v), reduce_fraction(ap * v + bp * u)}));
  }
  return out;
}

std::vector<Check> verify_conformal(const ConformalData& cd) {
  const RingPtr& R = cd.ring;
  RingElem one = RingElem::constant(R, 1);
  RingElem E = sc(R, cd.eps);
  CheckBuilder circ("conformal-circle-system", "x1^2 - 2 eps x2 + eps^2 x2^2 = theta_1 - 1, x1^2 + 2 eps x1 + eps^2 x2^2 = eps^2 (theta_2 - 1)");
  RingElem r1 = cd.v1 * cd.v1 - (E * cd.v2).scaled(2) + E * E * cd.v2 * cd.v2 - (cd.theta1 - one);
  RingElem r2 = cd.v1 * cd.v1 + (E * cd.v1).scaled(2) + E * E * cd.v2 * cd.v2 - E * E * (cd.theta2 - one);
  circ.expect(r1.is_zero(), [&] { return "first residual " + r1.str(10); });
  circ.expect(r2.is_zero(), [&] { return "second residual " + r2.str(10); });
  circ.expect(is_zero_mod_p(cd.v1) && is_zero_mod_p(cd.v2), [] { return std::string("v_i not divisible by p"); });
  circ.expect(cd.u1 * cd.u1 + cd.v1 * cd.v1 == cd.theta1, [] { return std::string("u_1^2 + v_1^2 != theta_1"); });
  circ.expect(cd.u2 * cd.u2 + cd.v2 * cd.v2 == cd.theta2, [] { return std::string("u_2^2 + v_2^2 != theta_2"); });

  CheckBuilder newton("conformal-newton", "quadratic formula root = Newton root");
  newton.expect(cd.v1 == cd.v1_newton, [&] { return "difference " + (cd.v1 - cd.v1_newton).str(10); });

  std::vector<Check> out{circ.done(), newton.done()};
  if (cd.d1 == cd.d2) {
    CheckBuilder eq("conformal-equal-case", "v = -1/2 + 1/2 (2 theta - 1)^(1/2), v_2 = -v_1, u = 1 + v");
    RingElem v = equal_case_v(cd.theta1);
    eq.expect(v == cd.v1, [&] { return "series v differs: " + (v - cd.v1).str(10); });
    eq.expect(cd.v2 == -cd.v1, [] { return std::string("v_2 != -v_1"); });
    eq.expect(cd.u1 == one + cd.v1 && cd.u2 == cd.u1, [] { return std::string("u != 1 + v"); });
    out.push_back(eq.done());
  }

  // Agreement with the GL_2 solver restricted to G'.
  const CtxPtr& ctx = cd.d1.ctx();
  ScalarMatrix q1(2, PadicScalar(ctx)), q2(2, PadicScalar(ctx));
  q1(0, 0) = q1(1, 1) = cd.d1;
  q2(0, 0) = q2(1, 1) = cd.d2;
  Connection c = solve(MetricTuple::make({q1, q2}), ctx->N());
  SubstitutionMap res = restrict_to_gl1c(c.ring());
  std::vector<FrobeniusLift> lifts = closed_form_lifts(cd);
  CheckBuilder agree("conformal-closed-form", "restricted Lambda_i = [[u_i, v_i], [-v_i, u_i]]");
  for (int i = 0; i < 2; ++i) {
    RingMatrix want = i == 0 ? rotation(cd.u1, cd.v1) : rotation(cd.u2, cd.v2);
    RingMatrix got = res.apply(c.lambda(i));
    for (int t = 0; t < 4; ++t)
      agree.expect(got.a[t] == want.a[t], [&] {
        return "Lambda_" + std::to_string(i + 1) + " entry " + std::to_string(t) + ": " + (got.a[t] - want.a[t]).str(10);
      });
    const auto& Wgl2 = c.lift(i).images();
    agree.expect(res.apply(Wgl2[0]) == lifts[i].images()[0] && res.apply(Wgl2[1]) == lifts[i].images()[1],
                 [&] { return "lift " + std::to_string(i + 1) + " images differ on alpha, beta"; });
  }
  agree.note("d1=" + cd.d1.str() + " d2=" + cd.d2.str() + " p=" + std::to_string(ctx->p()) + " N=" +
             std::to_string(ctx->N()));
  out.push_back(agree.done());
  return out;
}

Check verify_conformal_delta_at_identity(const ConformalData& cd) {
  CheckBuilder cb("conformal-delta-at-identity", "delta_i [[a, b], [-b, a]] = -1/2 (dd/d^p) [[1, +-1], [-+1, 1]] mod (p, a-1, b)");
  if (!(cd.d1 == cd.d2)) throw DomainError("needs d_1 = d_2");
  const RingPtr& R = cd.ring;
  const u64 p = static_cast<u64>(R->p());
  PadicScalar e = p_derivation_base(cd.d1) * inverse(truncate(cd.d1, R->N() - 1).pow(p));
  PadicScalar w = -half(truncate(e, 1));
  RingElem one = RingElem::constant(R, 1);
  for (int i = 0; i < 2; ++i) {
    const RingElem& u = i == 0 ? cd.u1 : cd.u2;
    const RingElem& v = i == 0 ? cd.v1 : cd.v2;
    RingMatrix D = mat_div_p_pow(rotation(u - one, v), 1);
    int s = i == 0 ? 1 : -1;
    std::vector<PadicScalar> want{w, w.scaled(s), w.scaled(-s), w};
    for (int t = 0; t < 4; ++t)
      cb.expect(reduce_mod_p_and_x1(D.a[t]) == want[t].residue(),
                [&] { return "delta_" + std::to_string(i + 1) + " entry " + std::to_string(t); });
  }
  cb.note("dd/d^p = " + truncate(e, 1).str());
  return cb.done();
}

Check det_compat(const ConformalData& cd) {
  if (!(cd.d1 == cd.d2)) throw DomainError("det compatibility needs d_1 = d_2");
  CheckBuilder cb("det-compat", "phi_i(alpha^2 + beta^2) = (d^p/phi(d)) (alpha^2 + beta^2)^p");
  const RingPtr& R = cd.ring;
  const int p = static_cast<int>(R->p());
  PadicScalar f = cd.d1.pow(static_cast<u64>(p)) * inverse(frobenius_base(cd.d1));
  RingElem want = RingElem::gen(R).pow(p).scaled(f);
  std::vector<FrobeniusLift> lifts = closed_form_lifts(cd);
  for (int i = 0; i < 2; ++i) {
    RingElem got = lifts[i].apply(RingElem::gen(R));
    cb.expect(got == want, [&] { return "lift " + std::to_string(i + 1) + ": difference " + (got - want).str(10); });
  }
  cb.note("factor " + f.str());
  return cb.done();
}

PadicScalar sqrt_minus_one(const CtxPtr& base) {
  const i64 p = base->p();
  if (base->kind() == FieldKind::Cyclotomic && base->conductor() % 4 == 0)
    return embed(CyclotomicInt::zeta(base->conductor()), base).pow(static_cast<u64>(base->conductor() / 4));
  if (base->kind() != FieldKind::Rational || p % 4 != 1) throw DomainError("sqrt(-1) is not in the base ring");
  i64 r = 1;
  while ((r * r + 1) % p != 0) ++r;
  PadicScalar x = PadicScalar::from_int(base, r);
  PadicScalar one = PadicScalar::from_int(base, 1);
  for (int it = 0; it <= base->N(); ++it) x = x - (x * x + one) * inverse(x.scaled(2));
  return x;
}

DetPerpResult det_perp_commutator(const ConformalData& cd) {
  if (!(cd.d1 == cd.d2)) throw DomainError("det-perp lifts need d_1 = d_2");
  const RingPtr& R = cd.ring;
  DetPerpResult r;
  r.sqrt_minus_one = sqrt_minus_one(R->base());
  RingElem a = RingElem::variable(R, 0), b = RingElem::variable(R, 1);
  RingElem z = a + b.scaled(r.sqrt_minus_one);
  RingElem s = z * z * RingElem::gen_inverse(R, 1);
  std::vector<FrobeniusLift> L = closed_form_lifts(cd);
  r.phi1_s = reduce_fraction(L[0].apply(s));
  r.phi2_s = reduce_fraction(L[1].apply(s));
  r.commutator = reduce_fraction(L[0].apply(r.phi2_s) - L[1].apply(r.phi1_s));
  return r;
}

std::vector<Check> verify_horizontality_grid(const std::vector<PadicScalar>& grid, int N) {
  CheckBuilder gp("horizontal-conformal", "x11 - x22, x12 + x21 are mapped into their ideal");
  CheckBuilder uc("horizontal-unitary-iff", "U_1^c horizontal for both lifts <=> dd_1 = dd_2 = 0");
  int horizontal_pairs = 0;
  for (const auto& d1 : grid)
    for (const auto& d2 : grid) {
      const CtxPtr ctx = d1.ctx()->with_precision(N);
      PadicScalar e1 = truncate(d1, N), e2 = truncate(d2, N);
      ScalarMatrix q1(2, PadicScalar(ctx)), q2(2, PadicScalar(ctx));
      q1(0, 0) = q1(1, 1) = e1;
      q2(0, 0) = q2(1, 1) = e2;
      Connection c = solve(MetricTuple::make({q1, q2}), N);
      bool both = true;
      for (int i = 0; i < 2; ++i) {
        HorizontalResult h = check_horizontal(c.lift(i), IdealKind::ConformalGL2);
        gp.expect(h.horizontal, [&] { return "d=(" + e1.str() + "," + e2.str() + ") lift " + std::to_string(i + 1); });
        both = both && check_horizontal(c.lift(i), IdealKind::CircleGL2).horizontal;
      }
      bool flat = p_derivation_base(e1).is_zero() && p_derivation_base(e2).is_zero();
      horizontal_pairs += both;
      uc.expect(both == flat, [&] {
        return "d=(" + e1.str() + "," + e2.str() + "): horizontal=" + (both ? "yes" : "no") +
               " dd=0: " + (flat ? "yes" : "no");
      });
    }
  uc.note(std::to_string(horizontal_pairs) + " horizontal pairs");
  return {gp.done(), uc.done()};
}

}  // namespace alc
