#include "gl2lab/mellin.hpp"

#include <array>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gl2lab/errors.hpp"

namespace gl2lab::mellin {

namespace {

// Truncated Taylor coefficients c_k = g^{(k)}(t) / k!.
using Jet = std::array<double, kMaxOrder + 1>;

Jet mul(const Jet& a, const Jet& b) {
  Jet r{};
  for (int k = 0; k <= kMaxOrder; ++k) {
    for (int i = 0; i <= k; ++i) r[k] += a[i] * b[k - i];
  }
  return r;
}

Jet reciprocal(const Jet& a) {
  Jet r{};
  r[0] = 1.0 / a[0];
  for (int k = 1; k <= kMaxOrder; ++k) {
    double acc = 0.0;
    for (int i = 1; i <= k; ++i) acc += a[i] * r[k - i];
    r[k] = -acc * r[0];
  }
  return r;
}

Jet exp_jet(const Jet& a) {
  Jet r{};
  r[0] = std::exp(a[0]);
  for (int k = 1; k <= kMaxOrder; ++k) {
    double acc = 0.0;
    for (int i = 1; i <= k; ++i) acc += i * a[i] * r[k - i];
    r[k] = acc / k;
  }
  return r;
}

// exp(-1/x) as a jet, x = x0 + slope * dt.
Jet bump_factor(double x0, double slope) {
  if (x0 <= 0.0 || 1.0 / x0 > 745.0) return Jet{};
  Jet x{};
  x[0] = x0;
  x[1] = slope;
  Jet inv = reciprocal(x);
  for (double& c : inv) c = -c;
  return exp_jet(inv);
}

// (t^e - 1) / e, with the e -> 0 limit log t.
cplx power_quotient(double t, cplx e) {
  const double lt = std::log(t);
  const cplx z = e * lt;
  if (std::abs(z) < 1e-5) return lt * (1.0 + z / 2.0 + z * z / 6.0);
  return (std::exp(z) - 1.0) / e;
}

void check_order(int k) {
  if (k < 0 || k > kMaxOrder) {
    throw Unsupported("derivatives of h0 are available up to order " + std::to_string(kMaxOrder));
  }
}

constexpr double kQuadTol = 1e-12;
constexpr unsigned kQuadDepth = 10;

}  // namespace

cplx integrate_bump(const std::function<cplx(double)>& g) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(g, SmoothCutoff::lo, SmoothCutoff::hi, kQuadDepth, kQuadTol);
}

double SmoothCutoff::eval(double t, int k) const {
  check_order(k);
  if (t < 0.0) throw DomainError("h0 is defined for t >= 0");
  if (t <= lo) return k == 0 ? 1.0 : 0.0;
  if (t >= hi) return 0.0;
  const Jet a = bump_factor(hi - t, -1.0);
  const Jet b = bump_factor(t - lo, 1.0);
  // Either factor underflowing leaves h0 locally constant.
  if (b[0] == 0.0) return k == 0 ? 1.0 : 0.0;
  if (a[0] == 0.0) return 0.0;
  if (k == 0) return a[0] / (a[0] + b[0]);
  Jet sum{};
  for (int i = 0; i <= kMaxOrder; ++i) sum[i] = a[i] + b[i];
  const Jet h = mul(a, reciprocal(sum));
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  return h[k] * fact;
}

double h0_eval(double t, int k) { return SmoothCutoff{}.eval(t, k); }

TruncationWindow window(double A, double B) {
  if (!(A > 0.0) || !(A < B)) throw DomainError("window needs 0 < A < B");
  TruncationWindow w;
  w.A = A;
  w.B = B;
  return w;
}

double window_eval(const TruncationWindow& w, double t) {
  if (t < 0.0) throw DomainError("window is defined for t >= 0");
  return w.cutoff.eval(t / w.B) - w.cutoff.eval(t / w.A);
}

cplx mellin_h0(cplx s, int N) {
  check_order(N);
  if (N == 0) {
    if (!(s.real() > 0.0)) throw DomainError("the defining integral needs Re s > 0");
    const cplx body = integrate_bump([s](double t) { return h0_eval(t) * std::pow(cplx(t), s - 1.0); });
    return 1.0 / s + body;
  }
  if (!(s.real() > -N)) throw DomainError("order " + std::to_string(N) + " covers Re s > " + std::to_string(-N));
  cplx pre = N % 2 == 0 ? 1.0 : -1.0;
  for (int j = 0; j < N; ++j) {
    if (std::abs(s + static_cast<double>(j)) < 1e-12) {
      throw PoleError("order " + std::to_string(N) + " recursion has a pole at s = " + std::to_string(-j));
    }
    pre /= s + static_cast<double>(j);
  }
  const cplx body = integrate_bump(
      [s, N](double t) { return h0_eval(t, N) * std::pow(cplx(t), s + static_cast<double>(N - 1)); });
  return pre * body;
}

cplx mellin_h0(cplx s) {
  constexpr int N = kMaxOrder;
  if (std::abs(s) < 1e-12) throw PoleError("M h0 has a simple pole at s = 0");
  if (!(s.real() > -N)) throw DomainError("M h0 is continued to Re s > -4");
  // Nearest of the removable points -1, ..., -(N-1).
  int j = static_cast<int>(std::lround(-s.real()));
  const bool removable = j >= 1 && j < N && std::abs(s + static_cast<double>(j)) < 0.5;
  if (!removable) return mellin_h0(s, N);
  // int h0^{(N)} t^{N-1-j} dt = 0, so the factor 1/(s+j) pairs with t^{s+j} - 1.
  const cplx e = s + static_cast<double>(j);
  cplx pre = N % 2 == 0 ? 1.0 : -1.0;
  for (int i = 0; i < N; ++i) {
    if (i != j) pre /= s + static_cast<double>(i);
  }
  const cplx body = integrate_bump([e, j](double t) {
    return h0_eval(t, N) * std::pow(t, N - 1 - j) * power_quotient(t, e);
  });
  return pre * body;
}

cplx mellin_one_minus_h0(cplx s) {
  if (!(s.real() < 0.0)) throw DomainError("M(1 - h0) is defined by its integral for Re s < 0");
  return -mellin_h0(s);
}

cplx mellin_one_minus_h0_quadrature(cplx s) {
  if (!(s.real() < 0.0)) throw DomainError("M(1 - h0) is defined by its integral for Re s < 0");
  const cplx body =
      integrate_bump([s](double t) { return (1.0 - h0_eval(t)) * std::pow(cplx(t), s - 1.0); });
  return body - std::pow(cplx(2.0), s) / s;
}

}  // namespace gl2lab::mellin
