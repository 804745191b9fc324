#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "alc/check.hpp"
#include "alc/padic.hpp"

namespace alc {

using BigInt = boost::multiprecision::cpp_int;

// Multivariate polynomial with exact integer coefficients.
class MPoly {
 public:
  using Exps = std::vector<int>;

  MPoly() = default;
  explicit MPoly(int nvars) : nv_(nvars) {}
  static MPoly constant(int nvars, const BigInt& c);
  static MPoly variable(int nvars, int v);

  int nvars() const { return nv_; }
  const std::map<Exps, BigInt>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  int total_degree() const;
  // Degree in one variable.
  int degree_in(int v) const;

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator-() const;
  MPoly operator*(const MPoly& o) const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o) { return *this += -o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  bool operator==(const MPoly& o) const { return nv_ == o.nv_ && t_ == o.t_; }
  bool operator!=(const MPoly& o) const { return !(*this == o); }
  MPoly scaled(const BigInt& c) const;
  MPoly pow(int e) const;
  // Every coefficient divisible by m.
  bool divisible_by(const BigInt& m) const;
  MPoly divided_exactly(const BigInt& m) const;
  // Substitutes constants for some variables (entries set to nullptr are kept).
  MPoly substitute(const std::vector<const BigInt*>& values) const;
  BigInt evaluate(const std::vector<BigInt>& values) const;
  std::string str(const std::vector<std::string>& names, size_t max_terms = 0) const;

 private:
  int nv_ = 0;
  std::map<Exps, BigInt> t_;
  void add_term(const Exps& e, const BigInt& c);
};

// Formal denominators 2^a * prod_g P_g^{k_g} over a fixed list of polynomials.
struct DenominatorBasis {
  int nvars = 2;
  std::vector<MPoly> gens;
  std::vector<std::string> names;
};
using BasisPtr = std::shared_ptr<const DenominatorBasis>;

class RationalFunc {
 public:
  RationalFunc() = default;
  RationalFunc(BasisPtr basis, MPoly num, int two = 0, std::vector<int> k = {});
  static RationalFunc constant(const BasisPtr& b, const BigInt& c);
  // 1 / gens[g]
  static RationalFunc inverse_gen(const BasisPtr& b, int g);

  const BasisPtr& basis() const { return b_; }
  const MPoly& num() const { return num_; }
  int two() const { return two_; }
  const std::vector<int>& k() const { return k_; }
  MPoly denominator() const;
  bool is_zero() const { return num_.is_zero(); }

  RationalFunc operator+(const RationalFunc& o) const;
  RationalFunc operator-(const RationalFunc& o) const;
  RationalFunc operator-() const;
  RationalFunc operator*(const RationalFunc& o) const;
  RationalFunc scaled(const BigInt& c) const;
  RationalFunc half() const;
  bool operator==(const RationalFunc& o) const;
  RationalFunc pow(int e) const;

  // f = g mod m in Z[1/2, x, gens^-1], for m odd with every gen nonzero mod m:
  // the numerator of f - g over a common denominator is divisible by m.
  bool congruent(const MPoly& g, const BigInt& m) const;
  std::string str(const std::vector<std::string>& names, size_t max_terms = 10) const;

 private:
  BasisPtr b_;
  MPoly num_;
  int two_ = 0;
  std::vector<int> k_;
  RationalFunc aligned(int two, const std::vector<int>& k) const;
};

// a + b v with v^2 = c - v, where c = (theta - 1)/2.
class QuadExtElem {
 public:
  QuadExtElem() = default;
  QuadExtElem(std::shared_ptr<const RationalFunc> c, RationalFunc a, RationalFunc b)
      : c_(std::move(c)), a_(std::move(a)), b_(std::move(b)) {}
  static QuadExtElem v(const std::shared_ptr<const RationalFunc>& c);

  const RationalFunc& a() const { return a_; }
  const RationalFunc& b() const { return b_; }
  QuadExtElem operator+(const QuadExtElem& o) const;
  QuadExtElem operator-(const QuadExtElem& o) const;
  QuadExtElem operator*(const QuadExtElem& o) const;
  QuadExtElem pow(int e) const;
  bool operator==(const QuadExtElem& o) const { return a_ == o.a_ && b_ == o.b_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  // Trace over the base: 2a - b.
  RationalFunc trace() const;

 private:
  std::shared_ptr<const RationalFunc> c_;
  RationalFunc a_, b_;
};

struct RMat2 {
  RationalFunc a[4];
  RMat2 operator*(const RMat2& o) const;
  RationalFunc trace() const { return a[0] + a[3]; }
};
RMat2 rmat_pow(const RMat2& M, int e);
RMat2 rmat_identity(const BasisPtr& b);
// a 1 + b V: the matrix of multiplication by a + b v in the basis (1, v), up to transpose.
RMat2 regular_matrix(const QuadExtElem& z, const RMat2& V);

// ---------------------------------------------------------------------------
// theta_p = d^p (alpha^2+beta^2)^p / (phi(d) (alpha^2p + beta^2p)) for an
// integer unit d (so phi(d) = d), and V_p = [[0, 1], [(theta_p - 1)/2, -1]].
// Variables are (alpha, beta); the basis holds alpha^2q + beta^2q for each
// prime q in `primes`.
BasisPtr alpha_beta_basis(const std::vector<i64>& primes);
struct ThetaV {
  RationalFunc theta;
  RMat2 V;
};
ThetaV theta_and_vmatrix(i64 d, i64 p, const BasisPtr& basis);

struct StarCurvature {
  i64 d = 1, p = 3, pp = 3;
  RationalFunc at_alpha, at_beta;
  bool traces_agree = true;  // matrix powers and quadratic-extension powers give the same traces
};
StarCurvature star_curvature_traces(i64 d, i64 p, i64 pp);
// -2 (alpha^pp' + beta^pp') mod p and mod p', both values nonzero, and the two
// trace computations agree.
std::vector<Check> verify_star_curvature(const StarCurvature& s);
// -2 (alpha^e + beta^e)
MPoly star_target(i64 e);

// Fractional-linear lifts on E''' = F(t), t = alpha/beta:
//   t -> (u t^p - v)/(v t^p + u) and t -> (u t^p + v)/(-v t^p + u), u = 1 + v.
// Coefficients live in the quadratic extension over Q(t).
struct MoebiusLifts {
  i64 d = 1, p = 3;
  std::shared_ptr<const RationalFunc> c;  // (theta - 1)/2 in t
  QuadExtElem num1, den1, num2, den2;
  int degree_num = 0, degree_den = 0;  // in t
};
MoebiusLifts moebius_lifts(i64 d, i64 p);
// v = (t^p - t2)/(t2 t^p + t2 - t^p + 1) with t2 the image of t, verified by
// cross multiplication; the coefficient of v is checked to be nonzero.
std::vector<Check> verify_moebius(const MoebiusLifts& m);

// ---------------------------------------------------------------------------
// The n^3 x n^3 linear system in z with coefficients from y:
//   (y_i^t z_i)_jk + (z_i^t y_i)_jk = 0   (i, j <= k)
//   z_ikj - z_jki = 0                     (i < j, k)
// Unknowns ordered lexicographically by (i, j, k); equations by the two blocks
// in order, each lexicographic.
using IntMatrix = std::vector<std::vector<BigInt>>;
IntMatrix d_system(int n, const std::vector<IntMatrix>& y);
BigInt bareiss_determinant(IntMatrix M);
BigInt d_determinant(int n, const std::vector<IntMatrix>& y);
// det(y_1) det(y_2) det(y_{1|2}), y_{1|2} = [[y_112, y_211], [y_122, y_221]].
BigInt d_factored_n2(const std::vector<IntMatrix>& y);
std::vector<Check> verify_d_determinant(const std::vector<int>& ns, int random_points, u64 seed);

// Generators of the ring C over Z[x, det^-1, y]: variables are x_ab (n^2)
// followed by y_ijk (n^3).
struct EtalePresentation {
  int n = 0;
  i64 p = 3;
  std::vector<MPoly> metric_gens;   // (y_i^t A_i y_i - B_i)_jk, j <= k
  std::vector<MPoly> torsion_gens;  // (A_i(y_i - 1))_kj - (A_j(y_j - 1))_ki, i < j
};
EtalePresentation etale_presentation(const std::vector<std::vector<i64>>& q, i64 p);
// At y_i = 1 every generator is 0 mod p; torsion generators vanish exactly.
Check section_check(const EtalePresentation& e);

// tr(M^p) = tr(M)^p mod p for random 2x2 matrices over Z[alpha, beta].
Check verify_trace_power(i64 p, int samples, u64 seed);

}  // namespace alc
