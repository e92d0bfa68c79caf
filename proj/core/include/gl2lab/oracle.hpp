#pragma once

// Brute-force cross-checks for the local closed forms: enumeration of
// GL2(Z/p^m), p-adic Jacquet integrals for Whittaker values, and shell-by-shell
// summation of the local zeta integrals. Nothing here calls the closed forms
// of locgl2 except the explicit linear-system solver, which by contract builds
// its system from the classical vectors.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "gl2lab/symring.hpp"

namespace gl2lab::oracle {

using sym::cplx;
using sym::EvalPoint;
using sym::SymElem;

struct CosetReport {
  std::int64_t q = 0;
  int m = 0;
  std::int64_t modulus = 0;
  std::int64_t group_order = 0;
  // Sizes of D_0, ..., D_{m-1} and D'_m, in that order.
  std::vector<std::int64_t> cell_sizes;
  std::vector<mpq_class> masses;
};
// Enumerates GL2(Z/q^m) for prime q; refuses moduli above size_limit.
CosetReport coset_count(std::int64_t q, int m, std::int64_t size_limit = 27);

// Classical vectors a(l, n), n = 0..lmax, from Gram-Schmidt on the cell
// indicators against the coset masses.
std::vector<std::vector<double>> classical_vectors_numeric(std::int64_t q, int lmax);

// c(n, l; s0) for l = 0..n from the evaluation system
// q^{(n-2k)(1/2+s0)} = sum_l c(n,l;s0) a(l, n-k), k = 0..n.
std::vector<SymElem> solve_transition_system(int n);
std::vector<cplx> solve_transition_system(int n, const EvalPoint& at);

struct Options {
  int k_max = 60;
  int k_limit = 480;
  double tail_tol = 1e-12;
  bool trivial_psi = false;  // negative control
};

struct ShellSum {
  std::int64_t q = 0;
  std::string integrand;
  int k_min = 0;
  int k_max = 0;
  cplx value{};
  double tail_bound = 0.0;
};

// 2x2 matrix over Q, row major.
using Mat2 = std::array<mpq_class, 4>;
Mat2 identity2();
Mat2 weyl();  // ((0, 1), (-1, 0))

// W_{e_l}(s0, a(p^m) g) for m in [m_first, m_last], from the Jacquet integral.
std::vector<cplx> whittaker_values(std::int64_t p, int l, const Mat2& g, cplx s0, int m_first,
                                   int m_last, const Options& opt = {});

// int W_l(s0, a(y) g) |y|^s d^x y; with dual set, g = w.
ShellSum zeta_by_summation(int l, const EvalPoint& at, bool dual = false, const Options& opt = {});
// zeta_l(s, s0) and its dual as ratios of the above.
cplx zeta_ratio_by_summation(int l, const EvalPoint& at, bool dual = false, const Options& opt = {});

// l = 0: int W_0(s1) W_0(s2) |y|^{s-1/2}. l = 1, 2: d_l^{-1/2} int W_l(s1) W_0(s2) |y|^s
// divided by the l = 0 integral at s + 1/2.
cplx rs_by_summation(int l, const EvalPoint& at, const Options& opt = {});
// The same ratio with the K-integral against conj(e_l(k)) carried out over the cosets of K0[l].
cplx rs_by_k_integral(int l, const EvalPoint& at, const Options& opt = {});
// a_n(s, s1, s2) from the translated spherical integral.
cplx rs_a_by_summation(int n, const EvalPoint& at, const Options& opt = {});

// l = 0: int_K int W_0(s1) conj(W_0(conj s2)) |y|^{s-1/2}. l = 1, 2: the hermitian ratio.
cplx herm_by_summation(int l, const EvalPoint& at, const Options& opt = {});
cplx herm_a_by_summation(int n, const EvalPoint& at, const Options& opt = {});

// Eigenvalue of the unnormalized intertwining operator on e_l at parameter s
// (Re s > 0), from int e_l(w n(x)) dx divided by e_l(1).
cplx intertwining_by_integration(std::int64_t p, int l, cplx s);

struct Comparison {
  std::string formula;
  EvalPoint at;
  cplx closed{};
  cplx oracle{};
  double rel_error = 0.0;
  bool pass = false;
};
Comparison compare(std::string formula, const EvalPoint& at, cplx closed, cplx oracle, double tol);
nlohmann::json to_json(const Comparison& c);
nlohmann::json to_json(const EvalPoint& at);

}  // namespace gl2lab::oracle
