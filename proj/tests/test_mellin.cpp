#include <cmath>
#include <random>

#include "doctest.h"
#include "gl2lab/errors.hpp"
#include "gl2lab/mellin.hpp"

using namespace gl2lab;
using mellin::cplx;

TEST_CASE("cutoff plateau, support and monotonicity") {
  CHECK(mellin::h0_eval(0.5) == 1.0);
  CHECK(mellin::h0_eval(0.0) == 1.0);
  CHECK(mellin::h0_eval(3.0, 2) == 0.0);
  CHECK(mellin::h0_eval(2.0) == 0.0);
  CHECK(mellin::h0_eval(1.5) == doctest::Approx(0.5));
  double prev = 1.0;
  for (int i = 1; i < 1000; ++i) {
    const double v = mellin::h0_eval(1.0 + i / 1000.0);
    CHECK(v <= prev);
    CHECK(v >= 0.0);
    prev = v;
  }
  for (int k = 1; k <= 4; ++k) {
    CHECK(mellin::h0_eval(0.7, k) == 0.0);
    CHECK(std::abs(mellin::h0_eval(1.0 + 1e-3, k)) < 1e-100);
    CHECK(std::abs(mellin::h0_eval(2.0 - 1e-3, k)) < 1e-100);
  }
  CHECK_THROWS_AS(mellin::h0_eval(1.5, 5), Unsupported);
  CHECK_THROWS_AS(mellin::h0_eval(-0.1), DomainError);
}

TEST_CASE("derivatives agree with Richardson-extrapolated differences") {
  const double h = 1e-3;
  for (double t : {1.1, 1.3, 1.5, 1.77, 1.9}) {
    for (int k = 1; k <= 4; ++k) {
      auto diff = [&](double step) {
        return (mellin::h0_eval(t + step, k - 1) - mellin::h0_eval(t - step, k - 1)) / (2 * step);
      };
      const double rich = (4.0 * diff(h / 2) - diff(h)) / 3.0;
      CHECK(mellin::h0_eval(t, k) == doctest::Approx(rich).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("fundamental theorem on the transition") {
  const cplx d1 = mellin::integrate_bump([](double t) { return cplx(mellin::h0_eval(t, 1)); });
  CHECK(std::abs(d1 - cplx(-1.0)) < 1e-12);
  for (int k = 2; k <= 4; ++k) {
    const cplx dk = mellin::integrate_bump([k](double t) { return cplx(mellin::h0_eval(t, k)); });
    CHECK(std::abs(dk) < 1e-12);
  }
}

TEST_CASE("Mellin transform at s = 1 is the mass of h0") {
  const cplx v = mellin::mellin_h0(1.0, 0);
  CHECK(v.real() > 1.0);
  CHECK(v.real() < 2.0);
  CHECK(std::abs(v.imag()) < 1e-15);
  // h0(t) + h0(3 - t) = 1 on [1,2], so the transition carries mass 1/2.
  CHECK(v.real() == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("recursion orders agree on the right half plane") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(0.05, 5.0);
  std::uniform_real_distribution<double> im(-20.0, 20.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const cplx s(re(rng), im(rng));
    const cplx ref = mellin::mellin_h0(s, 0);
    for (int N = 1; N <= 4; ++N) worst = std::max(worst, std::abs(mellin::mellin_h0(s, N) - ref));
  }
  CHECK(worst < 1e-8);
  const cplx s(2.0, 3.0);
  CHECK(std::abs(mellin::mellin_h0(s, 1) - mellin::mellin_h0(s, 3)) < 1e-8);
}

TEST_CASE("simple pole at zero with residue one") {
  const cplx eps(1e-3, 0.0);
  CHECK(std::abs(eps * mellin::mellin_h0(eps) - 1.0) < 1e-2);
  CHECK_THROWS_AS(mellin::mellin_h0(0.0), PoleError);
  CHECK_THROWS_AS(mellin::mellin_h0(cplx(-1.0, 0.0), 2), PoleError);
  CHECK_THROWS_AS(mellin::mellin_h0(cplx(-0.5, 1.0), 0), DomainError);
  CHECK_THROWS_AS(mellin::mellin_h0(cplx(-2.5, 0.0), 2), DomainError);
  CHECK_THROWS_AS(mellin::mellin_h0(cplx(-4.5, 0.0)), DomainError);
}

TEST_CASE("removable points are continuous") {
  for (int j = 1; j <= 3; ++j) {
    const cplx at = mellin::mellin_h0(cplx(-j, 0.0));
    const cplx near = mellin::mellin_h0(cplx(-j + 1e-4, 0.0));
    const cplx mid = mellin::mellin_h0(cplx(-j + 0.6, 0.0));
    const cplx mid_other = mellin::mellin_h0(cplx(-j + 0.6, 0.0), 4);
    CHECK(std::abs(at - near) < 1e-3 * std::max(1.0, std::abs(at)));
    CHECK(std::abs(mid - mid_other) < 1e-12);
  }
}

TEST_CASE("complement identity against direct quadrature") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> re(-2.95, -0.05);
  std::uniform_real_distribution<double> im(-15.0, 15.0);
  for (int i = 0; i < 40; ++i) {
    const cplx s(re(rng), im(rng));
    CHECK(std::abs(mellin::mellin_one_minus_h0(s) - mellin::mellin_one_minus_h0_quadrature(s)) < 1e-8);
  }
  for (const cplx s : {cplx(-2.0, 0.7), cplx(-0.5, 3.0), cplx(-1.0, 0.0), cplx(-0.5, 0.0)}) {
    CHECK(std::abs(mellin::mellin_one_minus_h0(s) - mellin::mellin_one_minus_h0_quadrature(s)) < 1e-8);
  }
  CHECK(std::abs(mellin::mellin_one_minus_h0(cplx(-1.0, 0.0)) + mellin::mellin_h0(cplx(-1.0, 0.0))) == 0.0);
  CHECK_THROWS_AS(mellin::mellin_one_minus_h0(cplx(0.5, 0.0)), DomainError);
}

TEST_CASE("vertical decay of the order-4 transform") {
  double c_low = 0.0;
  for (double t = 5.0; t <= 50.0; t += 0.5) {
    c_low = std::max(c_low, std::abs(mellin::mellin_h0(cplx(2.0, t), 4)) * std::pow(t, 4));
  }
  for (double t = 50.0; t <= 400.0; t += 7.0) {
    CHECK(std::abs(mellin::mellin_h0(cplx(2.0, t), 4)) * std::pow(t, 4) <= c_low);
  }
}

TEST_CASE("truncation window") {
  const auto w = mellin::window(1.0, 100.0);
  CHECK(mellin::window_eval(w, 10.0) == 1.0);
  CHECK(mellin::window_eval(w, 0.5) == 0.0);
  CHECK(mellin::window_eval(w, 250.0) == 0.0);
  for (double t = 0.0; t < 300.0; t += 0.37) {
    const double v = mellin::window_eval(w, t);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  CHECK_THROWS_AS(mellin::window(2.0, 1.0), DomainError);
  CHECK_THROWS_AS(mellin::window(0.0, 1.0), DomainError);

  const double B = std::exp(10.0);
  const auto wide = mellin::window(1.0, B);
  // int h(t) dt/t in u = log t.
  double acc = 0.0;
  const double du = 1e-3;
  for (double u = 0.0; u <= std::log(2.0 * B); u += du) {
    acc += mellin::window_eval(wide, std::exp(u + du / 2)) * du;
  }
  CHECK(std::abs(acc - 10.0) < 1.5);
}
