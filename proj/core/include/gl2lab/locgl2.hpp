#pragma once

// Local GL(2) data at a finite place with residue field of size q: coset
// masses, classical vectors, transition coefficients c(n,l;s0), local zeta
// ratios and intertwining factors, all as exact elements of the symbolic ring.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gl2lab/symring.hpp"
#include "gl2lab/unirational.hpp"

namespace gl2lab::local {

using sym::EvalPoint;
using sym::SymElem;
using sym::Var;

inline constexpr int kTransitionDepth = 8;
inline constexpr int kZetaRatioDepth = 6;

// q^{e/2}, i.e. Q^e.
SymElem qhalf(int e);
// Local zeta factor (1 - q^{-z})^{-1} at z = c/2 + sum of s-variables given as
// q^{-z} = Q^c * mono, where mono is a monomial in the T variables.
SymElem local_zeta(const SymElem& q_minus_z);

struct CosetMassTable {
  int m = 0;
  std::vector<SymElem> w;  // w[0..m]
  SymElem tail;            // mass of K0[m+1], i.e. sum of w_n over n > m
};
CosetMassTable coset_masses(int m);
// Sum of w_n over n >= m.
SymElem coset_tail(int m);

class ClassicalVectorTable {
 public:
  explicit ClassicalVectorTable(int lmax);
  [[nodiscard]] int lmax() const { return lmax_; }
  // a(l, n) for 0 <= l <= lmax and any n >= 0.
  [[nodiscard]] const SymElem& at(int l, int n) const;

 private:
  int lmax_;
  std::vector<std::vector<SymElem>> a_;  // a_[l][n], n <= l
};
ClassicalVectorTable classical_vectors(int lmax);
SymElem classical_value(int l, int n);

SymElem dimension(int n);

enum class Place { finite, real, complex };

struct MuFactor {
  Place place = Place::finite;
  int n = 0;
  SymElem finite;           // in T = q^{-s}; set when place == finite
  sym::UniRational arch;    // in the plain variable s; set otherwise
};
// Scalar by which the normalized intertwining operator acts on the K-type n.
MuFactor mu_factor(Place place, int n);
// Local ratio relating the unnormalized operator to the normalized one on the
// spherical vector: (1 - q^{-1-2s}) / (1 - q^{-2s}).
SymElem intertwining_normalizer();
// Eigenvalue of the unnormalized operator M(s) on e_l (measure with vol(o) = 1).
// Equals intertwining_normalizer() for l = 0 and normalizer * mu_factor(l) otherwise.
SymElem intertwining_eigenvalue(int l);

// c(n, l; s_x) with x one of T0, T1, T2 standing for q^{-s_x}.
SymElem c_coeff(int n, int l, Var x = Var::T0);
// c(n,l;s_x)/c(n,n;s_x).
SymElem c_tilde(int n, int l, Var x = Var::T0);

class TransitionTable {
 public:
  TransitionTable(int nmax, Var x);
  [[nodiscard]] int nmax() const { return nmax_; }
  [[nodiscard]] Var var() const { return x_; }
  [[nodiscard]] const SymElem& at(int n, int l) const;

 private:
  int nmax_;
  Var x_;
  std::vector<std::vector<SymElem>> c_;
};
TransitionTable transition_coeffs(int nmax, Var x = Var::T0);

// Inverse of a_n = sum_{l<=n} c(n,l;s_x) zeta_l, via the explicit formulas.
std::vector<SymElem> solve_transition(std::span<const SymElem> a, int N, Var x = Var::T0);
// a_n = sum_l c(n,l;s_x) zeta_l for n < zeta.size().
std::vector<SymElem> forward_transition(std::span<const SymElem> zeta, Var x = Var::T0);

// Power of the conductor C(psi) as the affine form
// constant + cs*s + cs0*s0 + cs1*s1 + cs2*s2.
struct ConductorExponent {
  mpq_class constant = 0;
  int cs = 0;
  int cs0 = 0;
  int cs1 = 0;
  int cs2 = 0;
  [[nodiscard]] std::string str() const;
  friend bool operator==(const ConductorExponent&, const ConductorExponent&) = default;
};

enum class FormKind {
  spherical,
  ratio,
  rs_spherical,
  rs_ratio,
  herm_ratio,
  rs_a,
  herm_a,
  mu,
};

struct LocalZetaClosedForm {
  FormKind kind = FormKind::spherical;
  int index = 0;
  SymElem value;
  ConductorExponent conductor;
  [[nodiscard]] std::string id() const;
};

// zeta(s, W_0(s0,.)) up to the conductor power, in the variables T, T0.
LocalZetaClosedForm spherical_zeta();
// zeta_l(s,s0) for |l| <= 6; negative l gives the dual ratio zeta_l(-s,s0).
LocalZetaClosedForm zeta_ratio(int l);
// zeta_l(s,s0) obtained by solving q^{-ns} = sum c(n,l) zeta_l, or the dual
// system q^{ns} = sum c(n,l) zeta'_l when dual is set.
SymElem zeta_ratio_by_solve(int l, bool dual);

LocalZetaClosedForm rs_a_coeff(int n);
LocalZetaClosedForm rs_spherical_zeta();
LocalZetaClosedForm rs_zeta_ratio(int l);

LocalZetaClosedForm herm_a_coeff(int n);
LocalZetaClosedForm herm_zeta_ratio(int l);
// The l = 2 hermitian ratio with the (1+q^{-1})(1-q^{-1})^2 factor as printed
// in the source; it fails the defining linear system and is kept for tests.
SymElem herm_zeta2_as_printed();

// sum_l c(n,l;s0) c(n,l;-s0) - 1, which vanishes identically.
SymElem unitarity_identity(int n);

enum class BoundKind { c_decay, zeta_ratio_decay, herm_decay, vertical_line };

// One sampled instance of a bound. Field use per kind:
//   c_decay:          n, l, k = order of d/ds0; at.s0 on Re = 0 or Re = 1/2
//   zeta_ratio_decay: n = order of d/ds at s = s1 = s2 = 0; l in {1,2}
//   herm_decay:       k1, k2 orders in s1, s2 at s = s1 = s2 = 1/2; l in {1,2}
//   vertical_line:    n = order of d/ds0; |l| <= 1; Re s is the epsilon
struct BoundSample {
  EvalPoint at;
  int n = 0;
  int l = 0;
  int k = 0;
  int k1 = 0;
  int k2 = 0;
};

struct BoundReport {
  BoundKind kind = BoundKind::c_decay;
  double constant = 10.0;
  std::size_t count = 0;
  double worst_ratio = 0.0;
  BoundSample worst;
  bool pass = true;
};

std::string bound_kind_name(BoundKind kind);
// Left side |derivative| and right side of the bound at one sample.
std::pair<double, double> bound_sides(BoundKind kind, const BoundSample& sample);
BoundReport bound_check(BoundKind kind, std::span<const BoundSample> samples, double constant);

}  // namespace gl2lab::local
