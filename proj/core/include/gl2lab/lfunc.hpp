#pragma once

// Dirichlet characters, central values L(1/2, chi) from a smoothed approximate
// functional equation, a Hurwitz-zeta reference, and the conductor scan.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gl2lab::lfunc {

using cplx = std::complex<double>;

struct DirichletCharacter {
  std::int64_t q = 1;
  int order = 1;                // values are e(index / order)
  std::vector<int> exponents;   // one per generator of (Z/q)^x
  std::vector<int> index;       // index[n mod q], -1 when gcd(n, q) > 1
  std::vector<cplx> values;     // chi(n mod q)
  int parity = 0;               // chi(-1) = (-1)^parity
  std::int64_t conductor = 1;
  bool primitive = true;
  cplx gauss{};                 // tau(chi), filled for primitive characters
  std::string label;            // "q:k1.k2...", the exponents

  [[nodiscard]] cplx operator()(std::int64_t n) const;
  [[nodiscard]] bool is_real() const;
  [[nodiscard]] DirichletCharacter conj() const;
};

// All characters mod q (primitive ones only by default), in a fixed order.
std::vector<DirichletCharacter> enumerate_characters(std::int64_t q, bool primitive_only = true);
void for_each_character(std::int64_t q, bool primitive_only,
                        const std::function<void(const DirichletCharacter&)>& fn);
// q prod_{p || q} (1 - 2/p) prod_{p^2 | q} (1 - 1/p)^2
std::int64_t count_primitive(std::int64_t q);

cplx gauss_sum(const DirichletCharacter& chi);

struct LValue {
  cplx value{};
  double error_bound = 0.0;
  int terms = 0;
};

inline constexpr double kContourAbscissa = 2.0;
inline constexpr double kContourStep = 0.2;
inline constexpr double kContourHeight = 40.0;

// L(1/2, chi) with the first sum cut at about balance * sqrt(q).
LValue l_central(const DirichletCharacter& chi, double target_abs_error = 1e-10, double balance = 1.0);

// q^{-s} sum_a chi(a) zeta(s, a/q).
cplx l_oracle_hurwitz(const DirichletCharacter& chi, cplx s);
// zeta(s, alpha) for alpha in (0, 1], Euler-Maclaurin after `direct` terms.
cplx hurwitz_zeta(cplx s, double alpha, int direct = 50);
cplx log_gamma(cplx z);

struct ScanRecord {
  std::int64_t q = 0;
  std::string label;
  double abs_L = 0.0;
  double normalized = 0.0;
  double seconds = 0.0;
};

// Max |L(1/2, chi)| over primitive chi for q = q_min, q_min + stride, ... <= q_max;
// moduli without primitive characters are skipped. seconds stays 0 unless timing is set.
std::vector<ScanRecord> scan(std::int64_t q_min, std::int64_t q_max, std::int64_t stride,
                             bool timing = false);

struct Fit {
  bool ok = false;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root mean square of the residuals
};
// Least squares of log(abs_L) against log q.
Fit exponent_fit(std::span<const ScanRecord> records);
// The same on log(normalized), restricted to the maximum in each dyadic block of q.
Fit block_maxima_fit(std::span<const ScanRecord> records);

mpq_class burgess_target(const mpq_class& theta);
double burgess_target(double theta);

}  // namespace gl2lab::lfunc
