#pragma once

#include <optional>
#include <string>
#include <vector>

#include "alc/ring.hpp"

namespace alc {

// A Frobenius lift on a localized coordinate ring. On GL_n rings it is given
// by x -> x^(p) * Lambda with Lambda = 1 mod p; on other rings by explicit
// images of the variables (which must reduce to p-th powers mod p).
class FrobeniusLift {
 public:
  FrobeniusLift() = default;

  static FrobeniusLift make_lift(const RingMatrix& lambda);
  static FrobeniusLift from_images(const RingPtr& R, std::vector<RingElem> images);
  static FrobeniusLift trivial(const RingPtr& R);

  const RingPtr& ring() const { return map_.src(); }
  bool has_lambda() const { return lambda_.has_value(); }
  const RingMatrix& lambda() const;
  const SubstitutionMap& map() const { return map_; }
  // images of the variables (x^(p) Lambda entries in the GL_n case)
  const std::vector<RingElem>& images() const { return map_.images(); }

  RingElem apply(const RingElem& f) const;
  RingMatrix apply(const RingMatrix& M) const;
  // The same lift with everything truncated to precision N.
  FrobeniusLift truncated(int N) const;

 private:
  std::optional<RingMatrix> lambda_;
  SubstitutionMap map_;
};

RingElem compose_apply(const FrobeniusLift& L1, const FrobeniusLift& L2, const RingElem& f);
// (L(f) - f^p)/p at precision N-1.
RingElem p_derivation_ring(const FrobeniusLift& L, const RingElem& f);

// Ideals for which membership is decided by restriction to the zero locus.
enum class IdealKind {
  ConformalGL2,  // (x11 - x22, x12 + x21) in O(GL_2)
  CircleGL2,     // (x11 - x22, x12 + x21, det(x) - 1) in O(GL_2)
  Circle,        // (alpha^2 + beta^2 - 1) in O(G')
};

std::vector<RingElem> ideal_generators(const RingPtr& R, IdealKind kind);
bool in_ideal(const RingElem& f, IdealKind kind);

struct HorizontalResult {
  bool horizontal = true;
  int failing_generator = -1;
  std::string witness;
};

// True iff L maps every generator into the ideal.
HorizontalResult check_horizontal(const FrobeniusLift& L, const std::vector<RingElem>& generators, IdealKind kind);
HorizontalResult check_horizontal(const FrobeniusLift& L, IdealKind kind);

}  // namespace alc
