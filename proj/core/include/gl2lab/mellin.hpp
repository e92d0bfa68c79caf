#pragma once

// Smooth cutoff h0 (1 on [0,1], 0 on [2,inf)) and its Mellin transform
//   M h0(s) = int_0^inf h0(t) t^{s-1} dt,
// continued to Re s > -4 by integrating by parts N times.

#include <complex>
#include <functional>

namespace gl2lab::mellin {

using cplx = std::complex<double>;

inline constexpr int kMaxOrder = 4;

// h0(t) = f(2-t) / (f(2-t) + f(t-1)) on (1,2), f(x) = exp(-1/x).
class SmoothCutoff {
 public:
  static constexpr double lo = 1.0;
  static constexpr double hi = 2.0;
  // k-th derivative, k <= kMaxOrder.
  [[nodiscard]] double eval(double t, int k = 0) const;
};

double h0_eval(double t, int k = 0);

struct TruncationWindow {
  double A = 1.0;
  double B = 2.0;
  SmoothCutoff cutoff;
};

// h(t) = h0(t/B) - h0(t/A), supported in (A, 2B) and equal to 1 on [2A, B].
TruncationWindow window(double A, double B);
double window_eval(const TruncationWindow& w, double t);

// (-1)^N prod_{j<N} (s+j)^{-1} int_1^2 h0^{(N)}(t) t^{s+N-1} dt, plus 1/s when N = 0.
// N = 0 needs Re s > 0; N >= 1 needs Re s > -N and s outside {0, ..., -N+1}.
cplx mellin_h0(cplx s, int N);
// Order 4 with the removable points -1, -2, -3 filled in; pole at 0 only.
cplx mellin_h0(cplx s);

// int_0^inf (1 - h0(t)) t^{s-1} dt for Re s < 0, through the identity with M h0.
cplx mellin_one_minus_h0(cplx s);
// The same integral by direct quadrature on [1,2] plus the exact tail beyond 2.
cplx mellin_one_minus_h0_quadrature(cplx s);

// int_1^2 g(t) dt by adaptive 61-point Gauss-Kronrod.
cplx integrate_bump(const std::function<cplx(double)>& g);

}  // namespace gl2lab::mellin
