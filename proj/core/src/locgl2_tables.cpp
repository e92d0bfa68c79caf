#include <array>
#include <cstdlib>
#include <mutex>

#include "gl2lab/errors.hpp"
#include "gl2lab/locgl2.hpp"

namespace gl2lab::local {

using sym::Poly;
using sym::RatFunc;
using sym::UniPoly;
using sym::UniRational;

namespace {

SymElem X(Var x, int e = 1) { return SymElem::var(x, e); }

// (x^k - x^{-k}) / (x - x^{-1}) in the variable q^{s} = 1/X, expanded:
// sum_{j<k} X^{-(k-1)+2j}; odd in k.
SymElem geo(int k, Var x) {
  if (k < 0) return -geo(-k, x);
  std::vector<sym::Term> terms;
  const auto xi = static_cast<std::size_t>(x);
  for (int j = 0; j < k; ++j) {
    sym::Exps e{};
    e[xi] = -(k - 1) + 2 * j;
    terms.push_back({e, 1});
  }
  return SymElem(RatFunc(Poly::from_terms(std::move(terms))));
}

// sum_{j=0}^{m} X^{2j}
SymElem even_sum(int m, Var x) {
  std::vector<sym::Term> terms;
  const auto xi = static_cast<std::size_t>(x);
  for (int j = 0; j <= m; ++j) {
    sym::Exps e{};
    e[xi] = 2 * j;
    terms.push_back({e, 1});
  }
  return SymElem(RatFunc(Poly::from_terms(std::move(terms))));
}

void check_x(Var x) {
  if (x != Var::T0 && x != Var::T1 && x != Var::T2) {
    throw DomainError("transition coefficients take s0, s1 or s2");
  }
}

SymElem compute_c(int n, int l, Var x) {
  const SymElem one_plus = SymElem(1) + qhalf(-2);
  const SymElem euler = SymElem(1) - qhalf(-2) * X(x, 2);  // 1 - q^{-1-2s_x}
  if (l == 0) {
    return qhalf(-n) / one_plus * (geo(n + 1, x) - qhalf(-2) * geo(n - 1, x));
  }
  if (l == 1) {
    return -(qhalf(-(n - 1)) / one_plus * X(x, -n) * even_sum(n - 1, x) * euler);
  }
  // sqrt((q-1)/(q+1)) = S (Q^2-1)/(Q^2+1)
  const SymElem root = SymElem::S() * (qhalf(2) - 1) / (qhalf(2) + 1);
  return -(qhalf(-(n - l)) * X(x, -n) * even_sum(n - l, x) * euler * root);
}

struct Cache {
  std::once_flag once;
  std::vector<std::vector<SymElem>> c;
};

const SymElem& cached_c(int n, int l, Var x) {
  static std::array<Cache, 3> caches;
  const std::size_t slot = x == Var::T0 ? 0 : (x == Var::T1 ? 1 : 2);
  Cache& cache = caches[slot];
  std::call_once(cache.once, [&cache, x] {
    cache.c.resize(kTransitionDepth + 1);
    for (int m = 0; m <= kTransitionDepth; ++m) {
      for (int j = 0; j <= m; ++j) cache.c[m].push_back(compute_c(m, j, x));
    }
  });
  return cache.c[n][l];
}

}  // namespace

SymElem qhalf(int e) { return SymElem::var(Var::Q, e); }

SymElem local_zeta(const SymElem& q_minus_z) { return SymElem(1) / (SymElem(1) - q_minus_z); }

SymElem coset_tail(int m) {
  if (m < 0) throw DomainError("coset tail index must be >= 0");
  if (m == 0) return SymElem(1);
  return qhalf(-2 * (m - 1)) / (qhalf(2) + 1);
}

CosetMassTable coset_masses(int m) {
  if (m < 0) throw DomainError("coset mass depth must be >= 0");
  CosetMassTable t;
  t.m = m;
  t.w.push_back(qhalf(2) / (qhalf(2) + 1));
  for (int n = 1; n <= m; ++n) {
    t.w.push_back(qhalf(-2 * (n - 1)) * (SymElem(1) - qhalf(-2)) / (qhalf(2) + 1));
  }
  t.tail = coset_tail(m + 1);
  return t;
}

SymElem classical_value(int l, int n) {
  if (l < 0 || n < 0) throw DomainError("classical vector indices must be >= 0");
  if (l == 0) return SymElem(1);
  if (l == 1) return n == 0 ? qhalf(-1) : -qhalf(1);
  if (n <= l - 2) return SymElem(0);
  const SymElem base = qhalf(l - 2) * SymElem::S();
  if (n == l - 1) return base;
  return -((qhalf(2) - 1) * base);
}

ClassicalVectorTable::ClassicalVectorTable(int lmax) : lmax_(lmax) {
  if (lmax < 0) throw DomainError("classical vector depth must be >= 0");
  a_.resize(static_cast<std::size_t>(lmax) + 1);
  for (int l = 0; l <= lmax; ++l) {
    for (int n = 0; n <= l; ++n) a_[l].push_back(classical_value(l, n));
  }
}

const SymElem& ClassicalVectorTable::at(int l, int n) const {
  if (l < 0 || l > lmax_ || n < 0) throw DomainError("classical vector index out of range");
  return a_[l][std::min(n, l)];
}

ClassicalVectorTable classical_vectors(int lmax) { return ClassicalVectorTable(lmax); }

SymElem dimension(int n) {
  if (n < 0) throw DomainError("dimension index must be >= 0");
  if (n == 0) return SymElem(1);
  if (n == 1) return qhalf(2);
  return qhalf(2 * n) - qhalf(2 * n - 4);
}

MuFactor mu_factor(Place place, int n) {
  MuFactor mu;
  mu.place = place;
  mu.n = n;
  switch (place) {
    case Place::finite: {
      if (n < 0) throw DomainError("finite K-type index must be >= 0");
      const SymElem T = X(Var::T);
      // q^{-2ns} (1 - q^{-1+2s}) / (1 - q^{-1-2s})
      mu.finite = T.pow(2 * n) * (SymElem(1) - qhalf(-2) * T.pow(-2)) /
                  (SymElem(1) - qhalf(-2) * T.pow(2));
      return mu;
    }
    case Place::real: {
      if (n % 2 != 0) throw DomainError("real K-type index must be even");
      UniRational r(UniPoly({1}), UniPoly({1}));
      for (int k = 0; k <= std::abs(n) - 2; k += 2) {
        r = r * UniRational(UniPoly::linear(k + 1, -2), UniPoly::linear(k + 1, 2));
      }
      mu.arch = r;
      return mu;
    }
    case Place::complex: {
      if (n < 0 || n % 2 != 0) throw DomainError("complex K-type index must be even and >= 0");
      UniRational r(UniPoly({1}), UniPoly({1}));
      for (int k = 1; k <= n / 2; ++k) {
        r = r * UniRational(UniPoly::linear(k, -2), UniPoly::linear(k, 2));
      }
      mu.arch = r;
      return mu;
    }
  }
  throw Error("unknown place");
}

SymElem intertwining_normalizer() {
  const SymElem T = X(Var::T);
  return (SymElem(1) - qhalf(-2) * T.pow(2)) / (SymElem(1) - T.pow(2));
}

SymElem intertwining_eigenvalue(int l) {
  if (l < 0) throw DomainError("K-type index must be >= 0");
  if (l == 0) return intertwining_normalizer();
  return intertwining_normalizer() * mu_factor(Place::finite, l).finite;
}

SymElem c_coeff(int n, int l, Var x) {
  check_x(x);
  if (n < 0 || l < 0 || l > n) throw DomainError("c(n,l) needs 0 <= l <= n");
  if (n <= kTransitionDepth) return cached_c(n, l, x);
  return compute_c(n, l, x);
}

SymElem c_tilde(int n, int l, Var x) {
  if (l > n) return SymElem(0);
  return c_coeff(n, l, x) / c_coeff(n, n, x);
}

TransitionTable::TransitionTable(int nmax, Var x) : nmax_(nmax), x_(x) {
  check_x(x);
  if (nmax < 0) throw DomainError("transition depth must be >= 0");
  c_.resize(static_cast<std::size_t>(nmax) + 1);
  for (int n = 0; n <= nmax; ++n) {
    for (int l = 0; l <= n; ++l) c_[n].push_back(c_coeff(n, l, x));
  }
}

const SymElem& TransitionTable::at(int n, int l) const {
  if (n < 0 || n > nmax_ || l < 0 || l > n) throw DomainError("transition index out of range");
  return c_[n][l];
}

TransitionTable transition_coeffs(int nmax, Var x) { return TransitionTable(nmax, x); }

std::vector<SymElem> solve_transition(std::span<const SymElem> a, int N, Var x) {
  check_x(x);
  if (N < 0 || static_cast<std::size_t>(N) >= a.size()) {
    throw DomainError("solve_transition needs a_0..a_N");
  }
  const SymElem Xv = X(x);
  const SymElem P = qhalf(-1) * (SymElem(1) + Xv * Xv);  // q^{-1/2}(1+q^{-2s})
  const SymElem R = qhalf(-2) * Xv * Xv;                  // q^{-1-2s}
  // (1-q^{-2})^{-1/2} = Q^2 / ((Q^2-1) S)
  const SymElem inv_root = qhalf(2) / ((qhalf(2) - 1) * SymElem::S());
  // Normalized data: at_n = a_n / c(n,n), ct_n = c(n,0) / c(n,n).
  auto at = [&](int n) { return a[n] / c_coeff(n, n, x); };
  auto ct = [&](int n) { return c_coeff(n, 0, x) / c_coeff(n, n, x); };
  const SymElem& a0 = a[0];

  std::vector<SymElem> z;
  z.push_back(a0);
  for (int l = 1; l <= N; ++l) {
    SymElem zl;
    if (l == 1) {
      zl = at(1) - ct(1) * a0;
    } else if (l == 2) {
      const SymElem K = P * inv_root;
      zl = at(2) - K * at(1) + (K * ct(1) - ct(2)) * a0;
    } else if (l == 3) {
      const SymElem K = R * inv_root;
      zl = at(3) - P * at(2) + K * at(1) + (P * ct(2) - ct(3) - K * ct(1)) * a0;
    } else {
      zl = at(l) - P * at(l - 1) + R * at(l - 2) +
           (P * ct(l - 1) - ct(l) - R * ct(l - 2)) * a0;
    }
    z.push_back(std::move(zl));
  }
  return z;
}

std::vector<SymElem> forward_transition(std::span<const SymElem> zeta, Var x) {
  std::vector<SymElem> a;
  for (std::size_t n = 0; n < zeta.size(); ++n) {
    SymElem acc;
    for (std::size_t l = 0; l <= n; ++l) {
      acc += c_coeff(static_cast<int>(n), static_cast<int>(l), x) * zeta[l];
    }
    a.push_back(std::move(acc));
  }
  return a;
}

}  // namespace gl2lab::local
