#include "alc/lift.hpp"

namespace alc {

FrobeniusLift FrobeniusLift::make_lift(const RingMatrix& lambda) {
  if (lambda.a.empty()) throw DomainError("empty Lambda");
  const RingPtr& R = lambda.a[0].ring();
  if (R->kind() != RingKind::GLn || R->n() != lambda.n) throw DomainError("Lambda must be n x n over O(GL_n)");
  RingMatrix one = scalar_identity(R);
  for (int i = 0; i < lambda.n; ++i)
    for (int j = 0; j < lambda.n; ++j)
      if (!is_zero_mod_p(lambda(i, j) - one(i, j)))
        throw DomainError("Lambda is not congruent to 1 mod p at entry (" + std::to_string(i + 1) + "," +
                          std::to_string(j + 1) + ")");
  RingMatrix W = entrywise_pth_power(generic_matrix(R)) * lambda;
  FrobeniusLift L;
  L.lambda_ = lambda;
  L.map_ = SubstitutionMap(R, 1, W.a);
  return L;
}

FrobeniusLift FrobeniusLift::from_images(const RingPtr& R, std::vector<RingElem> images) {
  for (int v = 0; v < R->nvars(); ++v) {
    RingElem xv = RingElem::variable(R, v);
    if (!is_zero_mod_p(images[v] - xv.pow(static_cast<int>(R->p()))))
      throw DomainError("image of " + R->names()[v] + " does not reduce to its p-th power");
  }
  FrobeniusLift L;
  L.map_ = SubstitutionMap(R, 1, std::move(images));
  return L;
}

FrobeniusLift FrobeniusLift::trivial(const RingPtr& R) {
  if (R->kind() == RingKind::GLn) return make_lift(scalar_identity(R));
  FrobeniusLift L;
  L.map_ = SubstitutionMap::trivial_lift(R);
  return L;
}

const RingMatrix& FrobeniusLift::lambda() const {
  if (!lambda_) throw DomainError("lift is not given by a Lambda matrix");
  return *lambda_;
}

RingElem FrobeniusLift::apply(const RingElem& f) const { return map_.apply(f); }

RingMatrix FrobeniusLift::apply(const RingMatrix& M) const { return map_.apply(M); }

FrobeniusLift FrobeniusLift::truncated(int N) const {
  if (lambda_) return make_lift(map_entries(*lambda_, [N](const RingElem& e) { return truncate(e, N); }));
  std::vector<RingElem> im;
  for (const auto& e : map_.images()) im.push_back(truncate(e, N));
  FrobeniusLift L;
  L.map_ = SubstitutionMap(map_.src()->with_precision(N), map_.frob_count(), im);
  return L;
}

RingElem compose_apply(const FrobeniusLift& L1, const FrobeniusLift& L2, const RingElem& f) {
  return L1.apply(L2.apply(f));
}

RingElem p_derivation_ring(const FrobeniusLift& L, const RingElem& f) {
  if (f.precision() < 2) throw PrecisionUnderflow("p-derivation needs precision >= 2");
  RingElem fp = f.pow(static_cast<int>(f.ring()->p()));
  return div_p_pow(L.apply(f) - fp, 1);
}

std::vector<RingElem> ideal_generators(const RingPtr& R, IdealKind kind) {
  switch (kind) {
    case IdealKind::ConformalGL2:
    case IdealKind::CircleGL2: {
      if (R->kind() != RingKind::GLn || R->n() != 2) throw DomainError("ideal lives in O(GL_2)");
      std::vector<RingElem> g{RingElem::x(R, 0, 0) - RingElem::x(R, 1, 1), RingElem::x(R, 0, 1) + RingElem::x(R, 1, 0)};
      if (kind == IdealKind::CircleGL2) g.push_back(RingElem::gen(R) - RingElem::constant(R, 1));
      return g;
    }
    case IdealKind::Circle:
      if (R->kind() != RingKind::GL1c) throw DomainError("ideal lives in O(G')");
      return {RingElem::gen(R) - RingElem::constant(R, 1)};
  }
  return {};
}

bool in_ideal(const RingElem& f, IdealKind kind) {
  switch (kind) {
    case IdealKind::ConformalGL2:
      return restrict_to_gl1c(f.ring()).apply(f).is_zero();
    case IdealKind::CircleGL2:
      return reduce_mod_circle(restrict_to_gl1c(f.ring()).apply(f)).empty();
    case IdealKind::Circle:
      return reduce_mod_circle(f).empty();
  }
  return false;
}

HorizontalResult check_horizontal(const FrobeniusLift& L, const std::vector<RingElem>& generators, IdealKind kind) {
  HorizontalResult r;
  for (size_t g = 0; g < generators.size(); ++g) {
    if (!in_ideal(generators[g], kind)) throw DomainError("generator " + std::to_string(g) + " is not in the ideal");
    RingElem img = L.apply(generators[g]);
    if (!in_ideal(img, kind)) {
      r.horizontal = false;
      r.failing_generator = static_cast<int>(g);
      r.witness = img.str(10);
      return r;
    }
  }
  return r;
}

HorizontalResult check_horizontal(const FrobeniusLift& L, IdealKind kind) {
  return check_horizontal(L, ideal_generators(L.ring(), kind), kind);
}

}  // namespace alc
