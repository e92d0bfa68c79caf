#include <array>
#include <cmath>
#include <iomanip>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>
#include <tuple>

#include "gl2lab/errors.hpp"
#include "gl2lab/lfunc.hpp"
#include "gl2lab/mellin.hpp"

namespace gl2lab::lfunc {

namespace {

constexpr double kPi = std::numbers::pi;
// Weights are dropped once y exceeds this; the kernel decays like exp(-y^2/4).
constexpr double kYMax = 14.0;
// Accuracy assumed for each quadrature value of M h0 on the contour.
constexpr double kNodeRel = 1e-12;
constexpr int kNodes = static_cast<int>(kContourHeight / kContourStep + 0.5) + 1;

// B_2, B_4, ..., B_16.
constexpr std::array<double, 8> kBernoulli = {1.0 / 6,   -1.0 / 30,      1.0 / 42, -1.0 / 30,
                                              5.0 / 66, -691.0 / 2730, 7.0 / 6,  -3617.0 / 510};

// (exp(z) - 1) / z, with the series near 0.
cplx phi1(cplx z) {
  if (std::abs(z) < 1e-4) return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0;
  return (std::exp(z) - 1.0) / z;
}

// Node values G(sigma + i t_k), t_k = k * step, trapezoid end weight folded in.
struct Contour {
  double sigma = 0.0;
  std::vector<cplx> g;
  double abs_sum = 0.0;  // (step / 2pi) sum over all nodes of |G|
  double tail = 0.0;     // bound for the part |t| > height, same scale
};

struct Kernels {
  // [parity][sign][side]: sign 0 uses M h0(w), sign 1 uses M h0(-w); side 0 is Re w = 2, side 1 the left line.
  std::array<std::array<std::array<Contour, 2>, 2>, 2> c;
  // Residue of the Gamma pole at w = -1/2 - a, as a multiple of y^{1/2+a}.
  std::array<std::array<double, 2>, 2> res{};
};

// Left abscissa between the Gamma poles -1/2 - a and -5/2 - a, one unit from each.
double left_abscissa(int a) { return -1.5 - a; }

Kernels build_kernels() {
  Kernels K;
  for (int a = 0; a < 2; ++a) {
    const cplx norm = log_gamma(cplx((0.5 + a) / 2.0, 0.0));
    const double g = std::tgamma((0.5 + a) / 2.0);
    K.res[a][0] = 2.0 * mellin::mellin_h0(cplx(-0.5 - a, 0.0)).real() / g;
    K.res[a][1] = 2.0 * mellin::mellin_h0(cplx(0.5 + a, 0.0)).real() / g;
    for (int sign = 0; sign < 2; ++sign) {
      for (int side = 0; side < 2; ++side) {
        Contour& C = K.c[a][sign][side];
        C.sigma = side == 0 ? kContourAbscissa : left_abscissa(a);
        double abs_sum = 0.0;
        for (int k = 0; k < kNodes; ++k) {
          const cplx w(C.sigma, k * kContourStep);
          const cplx ratio = std::exp(log_gamma((0.5 + w + static_cast<double>(a)) / 2.0) - norm);
          const cplx m = mellin::mellin_h0(sign == 0 ? w : -w);
          const double wt = k == kNodes - 1 ? 0.5 : 1.0;
          C.g.push_back(wt * ratio * m);
          abs_sum += (k == 0 ? 1.0 : 2.0) * wt * std::abs(ratio * m);
          if (k == kNodes - 1) {
            // The Gamma factor decays like exp(-pi |t| / 4); M h0 like |t|^{-4}.
            C.tail = 2.0 * std::abs(ratio * m) * (4.0 / kPi) * 1.5 / (2.0 * kPi);
          }
        }
        C.abs_sum = abs_sum * kContourStep / (2.0 * kPi);
      }
    }
  }
  return K;
}

const Kernels& kernels() {
  static const Kernels K = build_kernels();
  return K;
}

// (1/2 pi) int_{-H}^{H} G(sigma + it) y^{-sigma - it} dt by the trapezoid rule; G(sigma - it) = conj(G(sigma + it)).
double contour_value(const Contour& C, double y) {
  const double ly = std::log(y);
  const cplx rot = std::polar(1.0, -kContourStep * ly);
  cplx e = 1.0;
  double acc = C.g[0].real();
  for (int k = 1; k < kNodes; ++k) {
    if (k % 32 == 0) {
      e = std::polar(1.0, -k * kContourStep * ly);
    } else {
      e *= rot;
    }
    acc += 2.0 * (C.g[k] * e).real();
  }
  return acc * std::exp(-C.sigma * ly) * kContourStep / (2.0 * kPi);
}

struct Weights {
  std::vector<double> w1, w2;  // weight(n) / sqrt(n), indexed by n - 1
  double err1 = 0.0, err2 = 0.0;  // sum_n n^{-1/2} |weight error|
};

// For y < 1 the contour is moved to the left line, picking up the pole of M h0 at 0
// (residue 1, or -1 for M h0(-w)) and the Gamma pole at w = -1/2 - a.
// sign 0: W(y) = I(2) = 1 + r + I(left).  sign 1: W(y) = -J(2) = 1 - r - J(left).
double weight(int parity, int sign, double y, double& err) {
  const Kernels& K = kernels();
  const bool left = y < 1.0;
  const Contour& C = K.c[parity][sign][left ? 1 : 0];
  const double scale = std::exp(-C.sigma * std::log(y));
  err = scale * (kNodeRel * C.abs_sum + C.tail) + 1e-16;
  const double I = contour_value(C, y);
  if (!left) return sign == 0 ? I : -I;
  const double r = K.res[parity][sign] * std::pow(y, 0.5 + parity);
  return sign == 0 ? 1.0 + r + I : 1.0 - r - I;
}

Weights make_weights(std::int64_t q, double balance, int parity) {
  Weights W;
  const double c = std::sqrt(kPi / static_cast<double>(q));
  const double y1 = c / balance, y2 = c * balance;
  for (int n = 1; n * y1 <= kYMax; ++n) {
    double e = 0.0;
    W.w1.push_back(weight(parity, 0, n * y1, e) / std::sqrt(static_cast<double>(n)));
    W.err1 += e / std::sqrt(static_cast<double>(n));
  }
  for (int n = 1; n * y2 <= kYMax; ++n) {
    double e = 0.0;
    W.w2.push_back(weight(parity, 1, n * y2, e) / std::sqrt(static_cast<double>(n)));
    W.err2 += e / std::sqrt(static_cast<double>(n));
  }
  // Omitted terms: |W(y)| <= int_{y/2}^inf k(v) dv / v with k(v) = 2 v^{1/2+a} exp(-v^2) / Gamma((1/2+a)/2).
  const double x = kYMax / 2.0;
  const double g = std::tgamma((0.5 + parity) / 2.0);
  const double tail = 2.0 / g * std::pow(x, parity - 0.5) * std::exp(-x * x) / (2.0 * x - 1.0);
  W.err1 += tail * (1.0 + 1.0 / (x * y1));
  W.err2 += tail * (1.0 + 1.0 / (x * y2));
  return W;
}

std::shared_ptr<const Weights> cached_weights(std::int64_t q, double balance, int parity) {
  static std::mutex mu;
  static std::map<std::tuple<std::int64_t, double, int>, std::shared_ptr<const Weights>> cache;
  const auto key = std::make_tuple(q, balance, parity);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto w = std::make_shared<const Weights>(make_weights(q, balance, parity));
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() >= 16) cache.clear();
  cache.emplace(key, w);
  return w;
}

std::string sci(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << x;
  return os.str();
}

// Euler-Maclaurin for zeta(s, alpha) after N direct terms. With drop_pole the
// constant -1/(s-1) of the tail integral is removed, which is exact in sums
// whose coefficients add up to zero.
cplx hurwitz_em(cplx s, double alpha, int N, bool drop_pole) {
  cplx acc = 0.0;
  for (int k = N - 1; k >= 0; --k) acc += std::pow(k + alpha, -s);
  const double x = N + alpha;
  const double lx = std::log(x);
  const cplx xs = std::exp(-s * lx);
  if (drop_pole) {
    acc += -lx * phi1((1.0 - s) * lx);
  } else {
    acc += x * xs / (s - 1.0);
  }
  acc += xs / 2.0;
  // B_{2j} / (2j)! * s (s+1) ... (s+2j-2) * x^{-s-2j+1}
  cplx rising = s;
  cplx xp = xs / x;
  double fact = 2.0;
  for (int j = 1; j <= 6; ++j) {
    acc += kBernoulli[j - 1] / fact * rising * xp;
    rising *= (s + static_cast<double>(2 * j - 1)) * (s + static_cast<double>(2 * j));
    xp /= x * x;
    fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
  }
  return acc;
}

}  // namespace

cplx log_gamma(cplx z) {
  if (z.real() <= 0.0 && std::abs(z.imag()) < 1e-12 && std::abs(z.real() - std::round(z.real())) < 1e-12) {
    throw PoleError("Gamma has a pole at " + std::to_string(z.real()));
  }
  cplx shift = 0.0;
  while (z.real() < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  cplx acc = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi);
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx p = inv;
  for (int k = 1; k <= 8; ++k) {
    acc += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * p;
    p *= inv2;
  }
  return acc - shift;
}

cplx hurwitz_zeta(cplx s, double alpha, int direct) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("hurwitz_zeta needs 0 < alpha <= 1");
  if (direct < 10) throw DomainError("hurwitz_zeta needs at least 10 direct terms");
  if (std::abs(s - 1.0) < 1e-14) throw PoleError("zeta(s, alpha) has a pole at s = 1");
  return hurwitz_em(s, alpha, direct, false);
}

cplx l_oracle_hurwitz(const DirichletCharacter& chi, cplx s) {
  if (s.real() < 0.4 || std::abs(s.imag()) > 10.0) {
    throw DomainError("the Hurwitz oracle covers Re s >= 0.4, |Im s| <= 10");
  }
  if (chi.q > 10000) throw DomainError("the Hurwitz oracle covers q <= 10000");
  cplx total = 0.0;
  for (std::int64_t a = 1; a <= chi.q; ++a) total += chi(a);
  const bool balanced = std::abs(total) < 1e-9;
  if (!balanced && std::abs(s - 1.0) < 1e-14) throw PoleError("L(s, chi0) has a pole at s = 1");

  struct Table {
    std::int64_t q = 0;
    cplx s{};
    bool balanced = false;
    std::vector<cplx> z;
  };
  thread_local Table T;
  if (T.q != chi.q || T.s != s || T.balanced != balanced) {
    T.q = chi.q;
    T.s = s;
    T.balanced = balanced;
    T.z.assign(static_cast<std::size_t>(chi.q) + 1, 0.0);
    for (std::int64_t a = 1; a <= chi.q; ++a) {
      if (chi.index[a % chi.q] < 0) continue;
      T.z[a] = hurwitz_em(s, static_cast<double>(a) / chi.q, 50, balanced);
    }
  }
  cplx acc = 0.0;
  for (std::int64_t a = 1; a <= chi.q; ++a) {
    if (chi.index[a % chi.q] >= 0) acc += chi(a) * T.z[a];
  }
  return std::exp(-s * std::log(static_cast<double>(chi.q))) * acc;
}

LValue l_central(const DirichletCharacter& chi, double target_abs_error, double balance) {
  if (chi.q < 3) throw DomainError("l_central needs q >= 3");
  if (!chi.primitive) throw DomainError("l_central needs a primitive character");
  if (!(balance > 0.0)) throw DomainError("balance must be positive");
  const auto Wp = cached_weights(chi.q, balance, chi.parity);
  const Weights& W = *Wp;
  cplx s1 = 0.0, s2 = 0.0;
  const auto q = static_cast<std::size_t>(chi.q);
  for (std::size_t i = W.w1.size(); i-- > 0;) s1 += chi.values[(i + 1) % q] * W.w1[i];
  for (std::size_t i = W.w2.size(); i-- > 0;) s2 += std::conj(chi.values[(i + 1) % q]) * W.w2[i];
  const cplx ia = chi.parity == 0 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
  const cplx eps = chi.gauss / (ia * std::sqrt(static_cast<double>(chi.q)));
  LValue out;
  out.value = s1 + eps * s2;
  out.terms = static_cast<int>(W.w1.size() + W.w2.size());
  out.error_bound = W.err1 + W.err2 + 1e-16 * out.terms;
  if (out.error_bound > target_abs_error) {
    throw Error("L(1/2, " + chi.label + "): error bound " + sci(out.error_bound) + " exceeds target " +
                sci(target_abs_error));
  }
  return out;
}

mpq_class burgess_target(const mpq_class& theta) {
  if (theta < 0 || theta > mpq_class(1, 2)) throw DomainError("theta must lie in [0, 1/2]");
  mpq_class r = mpq_class(1, 4) - (1 - 2 * theta) / 16;
  r.canonicalize();
  return r;
}

double burgess_target(double theta) {
  if (!(theta >= 0.0 && theta <= 0.5)) throw DomainError("theta must lie in [0, 1/2]");
  return 0.25 - (1.0 - 2.0 * theta) / 16.0;
}

}  // namespace gl2lab::lfunc
