#include <cmath>
#include <random>

#include "doctest.h"
#include "gl2lab/errors.hpp"
#include "gl2lab/locgl2.hpp"
#include "gl2lab/oracle.hpp"

using namespace gl2lab;
using gl2lab::oracle::cplx;
using gl2lab::oracle::EvalPoint;
using sym::Var;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

EvalPoint point(std::int64_t q, cplx s, cplx s0 = 0.0, cplx s1 = 0.0, cplx s2 = 0.0) {
  EvalPoint at;
  at.q = q;
  at.s = s;
  at.s0 = s0;
  at.s1 = s1;
  at.s2 = s2;
  return at;
}

cplx closed(const local::LocalZetaClosedForm& f, const EvalPoint& at) {
  return sym::substitute(f.value, at);
}

}  // namespace

TEST_CASE("coset enumeration reproduces the symbolic masses") {
  const std::vector<std::pair<int, int>> cases{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}};
  for (auto [q, m] : cases) {
    const auto rep = oracle::coset_count(q, m);
    const auto table = local::coset_masses(m - 1);
    REQUIRE(rep.masses.size() == static_cast<std::size_t>(m + 1));
    mpq_class total = 0;
    for (int n = 0; n < m; ++n) {
      CHECK(rep.masses[n] == *sym::exact_value(table.w[n], q));
      total += rep.masses[n];
    }
    CHECK(rep.masses[m] == *sym::exact_value(table.tail, q));
    total += rep.masses[m];
    CHECK(total == 1);
    std::int64_t cells = 0;
    for (auto c : rep.cell_sizes) cells += c;
    CHECK(cells == rep.group_order);
  }
}

TEST_CASE("coset enumeration examples and limits") {
  const auto r21 = oracle::coset_count(2, 1);
  CHECK(r21.group_order == 6);
  CHECK(r21.masses[0] == mpq_class(2, 3));
  CHECK(r21.masses[1] == mpq_class(1, 3));
  const auto r23 = oracle::coset_count(2, 3);
  CHECK(r23.modulus == 8);
  CHECK(r23.masses[0] == mpq_class(2, 3));
  CHECK(r23.masses[1] == mpq_class(1, 6));
  CHECK(r23.masses[2] == mpq_class(1, 12));
  CHECK_THROWS_AS(oracle::coset_count(7, 2), DomainError);
  CHECK_THROWS_AS(oracle::coset_count(4, 1), DomainError);
  CHECK_THROWS_AS(oracle::coset_count(2, 0), DomainError);
}

TEST_CASE("Gram-Schmidt classical vectors agree with the closed values") {
  for (std::int64_t q : {2, 3, 7}) {
    const auto a = oracle::classical_vectors_numeric(q, 6);
    const auto vals = sym::var_values(point(q, 0.0));
    for (int l = 0; l <= 6; ++l) {
      for (int n = 0; n <= 6; ++n) {
        const double want = sym::substitute(local::classical_value(l, n), vals).real();
        CHECK(a[l][n] == doctest::Approx(want).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("evaluation system reproduces the transition coefficients exactly") {
  const auto c0 = oracle::solve_transition_system(0);
  REQUIRE(c0.size() == 1);
  CHECK(c0[0] == sym::SymElem(1));
  for (int n = 1; n <= 4; ++n) {
    const auto c = oracle::solve_transition_system(n);
    REQUIRE(c.size() == static_cast<std::size_t>(n + 1));
    for (int l = 0; l <= n; ++l) CHECK((c[l] - local::c_coeff(n, l)).is_zero());
  }
  const EvalPoint at = point(7, 0.0, 0.25);
  const auto num = oracle::solve_transition_system(4, at);
  for (int l = 0; l <= 4; ++l) {
    CHECK(rel(num[l], sym::substitute(local::c_coeff(4, l), at)) < 1e-11);
  }
  CHECK_THROWS_AS(oracle::solve_transition_system(9), DomainError);
}

TEST_CASE("spherical Whittaker summation matches the spherical closed form") {
  const EvalPoint at = point(3, 2.0, 0.5);
  const auto sum = oracle::zeta_by_summation(0, at);
  CHECK(rel(sum.value, closed(local::spherical_zeta(), at)) < 1e-10);
  CHECK(sum.tail_bound <= 1e-12 * std::abs(sum.value));

  // s0 -> -s0 only changes the zeta_F(1 + 2 s0) normalization.
  const EvalPoint base = point(3, 2.0, cplx(0.2, 0.3));
  EvalPoint flipped = base;
  flipped.s0 = -base.s0;
  const cplx ratio = oracle::zeta_by_summation(0, flipped).value / oracle::zeta_by_summation(0, base).value;
  const cplx lq = std::log(3.0);
  const cplx want = (1.0 - std::exp(-lq * (1.0 - 2.0 * base.s0))) / (1.0 - std::exp(-lq * (1.0 + 2.0 * base.s0)));
  CHECK(rel(ratio, want) < 1e-10);
}

TEST_CASE("Whittaker values vanish below the support") {
  for (int l = 0; l <= 3; ++l) {
    const auto a = oracle::classical_vectors_numeric(5, l);
    const auto w = oracle::whittaker_values(5, l, oracle::identity2(), cplx(0.1, 0.4), -12, 6);
    for (int m = -12; m < -l - 1; ++m) CHECK(std::abs(w[m + 12]) < 1e-14);
    double peak = 0.0;
    for (int m = 0; m <= 6; ++m) peak = std::max(peak, std::abs(w[m + 12]));
    CHECK(peak > 1e-3);
  }
}

TEST_CASE("zeta ratios from summation") {
  for (auto [q, s, s0] : {std::tuple{2, cplx(1.7, 0.3), cplx(0.1, 1.0)},
                          std::tuple{5, cplx(2.2, -1.5), cplx(-0.2, 0.4)},
                          std::tuple{11, cplx(1.5, 4.0), cplx(0.0, -2.0)}}) {
    const EvalPoint at = point(q, s, s0);
    for (int l = 1; l <= 4; ++l) {
      CHECK(rel(oracle::zeta_ratio_by_summation(l, at), closed(local::zeta_ratio(l), at)) < 1e-9);
    }
  }
}

TEST_CASE("dual integrals reproduce the reflected ratios") {
  const EvalPoint at = point(3, cplx(1.7, 0.4), cplx(0.1, 0.6));
  for (int l = 1; l <= 3; ++l) {
    CHECK(rel(oracle::zeta_ratio_by_summation(l, at, true), closed(local::zeta_ratio(-l), at)) < 1e-9);
  }
}

TEST_CASE("Rankin-Selberg forms from summation") {
  const EvalPoint at = point(5, 1.0, 0.0, 0.2, 0.3);
  CHECK(rel(oracle::rs_a_by_summation(1, at), closed(local::rs_a_coeff(1), at)) < 1e-10);
  CHECK(rel(oracle::rs_a_by_summation(0, at), closed(local::rs_a_coeff(0), at)) < 1e-10);

  const EvalPoint im = point(3, 2.0, 0.0, cplx(0, 0.5), cplx(0, 0.5));
  CHECK(rel(oracle::rs_by_summation(0, im), closed(local::rs_spherical_zeta(), im)) < 1e-10);

  for (const EvalPoint& p : {point(2, 2.0, 0.0, 0.2, 0.3), point(7, cplx(1.6, 2.0), 0.0, cplx(0.1, 1.0), cplx(-0.15, 0.3))}) {
    for (int l = 1; l <= 2; ++l) {
      const cplx want = closed(local::rs_zeta_ratio(l), p);
      CHECK(rel(oracle::rs_by_summation(l, p), want) < 1e-9);
      // The K-integral with the unit vector e_l lands on the opposite sign.
      CHECK(rel(oracle::rs_by_k_integral(l, p), -want) < 1e-9);
    }
    CHECK(rel(oracle::rs_by_k_integral(0, p), closed(local::rs_spherical_zeta(), p)) < 1e-10);
    CHECK(rel(oracle::rs_a_by_summation(2, p), closed(local::rs_a_coeff(2), p)) < 1e-9);
  }
}

TEST_CASE("hermitian forms from the coset sums") {
  const EvalPoint at = point(3, 2.0, 0.0, 0.2, 0.3);
  CHECK(rel(oracle::herm_by_summation(0, at), closed(local::rs_spherical_zeta(), at)) < 1e-10);
  for (int n = 1; n <= 3; ++n) {
    CHECK(rel(oracle::herm_a_by_summation(n, at), closed(local::herm_a_coeff(n), at)) < 1e-9);
  }
  for (int l = 1; l <= 2; ++l) {
    CHECK(rel(oracle::herm_by_summation(l, at), closed(local::herm_zeta_ratio(l), at)) < 1e-9);
  }
  const cplx printed = sym::substitute(local::herm_zeta2_as_printed(), at);
  CHECK(rel(oracle::herm_by_summation(2, at), printed) > 1e-2);

  const EvalPoint cx = point(2, cplx(2.5, 1.0), 0.0, cplx(0.1, 0.7), cplx(-0.1, 1.3));
  for (int l = 1; l <= 2; ++l) {
    CHECK(rel(oracle::herm_by_summation(l, cx), closed(local::herm_zeta_ratio(l), cx)) < 1e-9);
  }
}

TEST_CASE("intertwining eigenvalues by integration") {
  for (std::int64_t q : {2, 3, 7}) {
    const cplx s(0.7, 1.2);
    const EvalPoint at = point(q, s);
    for (int l = 0; l <= 4; ++l) {
      const cplx want = sym::substitute(local::intertwining_eigenvalue(l), at);
      CHECK(rel(oracle::intertwining_by_integration(q, l, s), want) < 1e-10);
    }
  }
  CHECK_THROWS_AS(oracle::intertwining_by_integration(3, 1, cplx(-0.1, 0.0)), DomainError);
}

TEST_CASE("trivial character breaks the match") {
  oracle::Options bad;
  bad.trivial_psi = true;
  const EvalPoint at = point(3, 2.0, cplx(0.2, 0.5));
  const cplx want = closed(local::spherical_zeta(), at);
  CHECK(rel(oracle::zeta_by_summation(0, at).value, want) < 1e-10);
  CHECK(rel(oracle::zeta_by_summation(0, at, false, bad).value, want) > 1e-3);
  const EvalPoint rs = point(3, 2.0, 0.0, 0.2, 0.3);
  CHECK(rel(oracle::rs_by_summation(1, rs, bad), closed(local::rs_zeta_ratio(1), rs)) > 1e-3);
}

TEST_CASE("summation is deterministic and insensitive to the cutoff") {
  const EvalPoint at = point(7, cplx(1.5, 3.0), 0.0, cplx(0.2, -1.0), cplx(0.1, 0.5));
  const cplx a = oracle::herm_by_summation(2, at);
  const cplx b = oracle::herm_by_summation(2, at);
  CHECK(a == b);
  oracle::Options wide;
  wide.k_max = 120;
  CHECK(rel(oracle::herm_by_summation(2, at, wide), a) < 1e-12);
  CHECK(rel(oracle::rs_by_summation(2, at, wide), oracle::rs_by_summation(2, at)) < 1e-12);
  const EvalPoint z = point(2, cplx(1.5, 0.0), cplx(0.2, 0.0));
  CHECK(rel(oracle::zeta_by_summation(1, z, false, wide).value, oracle::zeta_by_summation(1, z).value) <
        1e-12);
}

TEST_CASE("divergent parameters are rejected") {
  CHECK_THROWS_AS(oracle::zeta_by_summation(0, point(3, -0.2, 0.4)), DomainError);
  CHECK_THROWS_AS(oracle::rs_by_summation(1, point(3, -0.5, 0.0, 0.4, 0.4)), DomainError);
  CHECK_THROWS_AS(oracle::rs_by_summation(3, point(3, 2.0)), Unsupported);
  CHECK_THROWS_AS(oracle::zeta_by_summation(0, point(4, 2.0)), DomainError);
}

TEST_CASE("seeded sweep over the acceptance box") {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> re_s(1.5, 3.0);
  std::uniform_real_distribution<double> im(-3.0, 3.0);
  std::uniform_real_distribution<double> small(-0.25, 0.25);
  const std::int64_t qs[] = {2, 3, 5, 7, 11};
  for (int i = 0; i < 5; ++i) {
    const EvalPoint at = point(qs[i], cplx(re_s(rng), im(rng)), cplx(small(rng), im(rng)),
                               cplx(small(rng), im(rng)), cplx(small(rng), im(rng)));
    CAPTURE(i);
    CHECK(rel(oracle::zeta_by_summation(0, at).value, closed(local::spherical_zeta(), at)) < 1e-9);
    CHECK(rel(oracle::zeta_ratio_by_summation(2, at), closed(local::zeta_ratio(2), at)) < 1e-9);
    CHECK(rel(oracle::rs_by_summation(2, at), closed(local::rs_zeta_ratio(2), at)) < 1e-9);
    CHECK(rel(oracle::herm_a_by_summation(2, at), closed(local::herm_a_coeff(2), at)) < 1e-9);
    CHECK(rel(oracle::herm_by_summation(2, at), closed(local::herm_zeta_ratio(2), at)) < 1e-9);
  }
}

TEST_CASE("comparison records") {
  const EvalPoint at = point(3, 2.0, 0.5);
  const auto c = oracle::compare("spherical_zeta", at, cplx(1.0, 0.0), cplx(1.0 + 1e-12, 0.0), 1e-9);
  CHECK(c.pass);
  const auto j = oracle::to_json(c);
  CHECK(j.at("formula") == "spherical_zeta");
  CHECK(j.at("pass") == true);
  CHECK(j.at("point").at("q") == 3);
  CHECK(j.contains("closed"));
  CHECK(j.contains("oracle"));
  CHECK(j.at("rel_error").get<double>() < 1e-11);
  const auto bad = oracle::compare("x", at, cplx(1.0, 0.0), cplx(2.0, 0.0), 1e-9);
  CHECK_FALSE(bad.pass);
}
