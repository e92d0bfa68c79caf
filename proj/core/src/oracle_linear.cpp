#include <algorithm>
#include <cmath>

#include "gl2lab/errors.hpp"
#include "gl2lab/locgl2.hpp"
#include "gl2lab/oracle.hpp"

namespace gl2lab::oracle {

namespace {

bool is_prime(std::int64_t q) {
  if (q < 2) return false;
  for (std::int64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

int valuation(std::int64_t x, std::int64_t q) {
  int v = 0;
  while (x % q == 0) {
    x /= q;
    ++v;
  }
  return v;
}

constexpr int kMaxSystem = 8;

nlohmann::json pair(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

}  // namespace

CosetReport coset_count(std::int64_t q, int m, std::int64_t size_limit) {
  if (!is_prime(q)) throw DomainError("coset_count needs a prime q");
  if (m < 1) throw DomainError("coset_count needs m >= 1");
  std::int64_t mod = 1;
  for (int i = 0; i < m; ++i) {
    mod *= q;
    if (mod > size_limit) {
      throw DomainError("q^m exceeds the enumeration limit " + std::to_string(size_limit));
    }
  }
  CosetReport rep;
  rep.q = q;
  rep.m = m;
  rep.modulus = mod;
  rep.cell_sizes.assign(static_cast<std::size_t>(m) + 1, 0);
  for (std::int64_t a = 0; a < mod; ++a) {
    for (std::int64_t b = 0; b < mod; ++b) {
      for (std::int64_t c = 0; c < mod; ++c) {
        for (std::int64_t d = 0; d < mod; ++d) {
          // Invertible mod q^m iff the determinant is a unit mod q.
          if (((a * d - b * c) % q + q) % q == 0) continue;
          ++rep.group_order;
          ++rep.cell_sizes[c == 0 ? m : valuation(c, q)];
        }
      }
    }
  }
  for (auto n : rep.cell_sizes) rep.masses.emplace_back(n, rep.group_order);
  for (auto& w : rep.masses) w.canonicalize();
  return rep;
}

std::vector<std::vector<double>> classical_vectors_numeric(std::int64_t q, int lmax) {
  if (q < 2) throw DomainError("q must be >= 2");
  if (lmax < 0) throw DomainError("lmax must be >= 0");
  const auto p = static_cast<long double>(q);
  const int cells = lmax + 1;
  // Mass of the cells >= n is the inverse index of K0[p^n] in K.
  auto upper = [p](int n) -> long double {
    return n == 0 ? 1.0L : 1.0L / (std::pow(p, n - 1) * (p + 1.0L));
  };
  std::vector<long double> w(cells);
  for (int n = 0; n < cells; ++n) w[n] = n == lmax ? upper(n) : upper(n) - upper(n + 1);

  std::vector<std::vector<long double>> basis;
  std::vector<std::vector<double>> out;
  for (int j = 0; j <= lmax; ++j) {
    std::vector<long double> v(cells);
    for (int n = 0; n < cells; ++n) v[n] = n >= j ? 1.0L : 0.0L;
    for (const auto& u : basis) {
      long double dot = 0;
      for (int n = 0; n < cells; ++n) dot += v[n] * u[n] * w[n];
      for (int n = 0; n < cells; ++n) v[n] -= dot * u[n];
    }
    long double norm = 0;
    for (int n = 0; n < cells; ++n) norm += v[n] * v[n] * w[n];
    norm = std::sqrt(norm);
    for (auto& x : v) x /= norm;
    if (j >= 1 && v[j] > 0) {
      for (auto& x : v) x = -x;
    }
    basis.push_back(v);
    out.emplace_back(v.begin(), v.end());
  }
  return out;
}

std::vector<SymElem> solve_transition_system(int n) {
  if (n < 0 || n > kMaxSystem) throw DomainError("solve_transition_system needs 0 <= n <= 8");
  const int size = n + 1;
  std::vector<std::vector<SymElem>> A(size, std::vector<SymElem>(size + 1));
  for (int k = 0; k < size; ++k) {
    for (int l = 0; l < size; ++l) A[k][l] = local::classical_value(l, n - k);
    // q^{(n-2k)(1/2+s0)} = Q^{n-2k} T0^{-(n-2k)}
    A[k][size] = SymElem::var(sym::Var::Q, n - 2 * k) * SymElem::var(sym::Var::T0, -(n - 2 * k));
  }
  for (int col = 0; col < size; ++col) {
    int piv = col;
    while (piv < size && A[piv][col].is_zero()) ++piv;
    if (piv == size) throw Error("singular evaluation system");
    std::swap(A[piv], A[col]);
    for (int r = 0; r < size; ++r) {
      if (r == col || A[r][col].is_zero()) continue;
      const SymElem f = A[r][col] / A[col][col];
      for (int c = col; c <= size; ++c) A[r][c] -= f * A[col][c];
    }
  }
  std::vector<SymElem> c;
  for (int l = 0; l < size; ++l) c.push_back(A[l][size] / A[l][l]);
  return c;
}

std::vector<cplx> solve_transition_system(int n, const EvalPoint& at) {
  if (n < 0 || n > kMaxSystem) throw DomainError("solve_transition_system needs 0 <= n <= 8");
  const int size = n + 1;
  const auto a = classical_vectors_numeric(at.q, n);
  const double lq = std::log(static_cast<double>(at.q));
  std::vector<std::vector<cplx>> A(size, std::vector<cplx>(size + 1));
  for (int k = 0; k < size; ++k) {
    for (int l = 0; l < size; ++l) A[k][l] = a[l][std::min(n - k, l)];
    A[k][size] = std::exp(static_cast<double>(n - 2 * k) * (0.5 + at.s0) * lq);
  }
  for (int col = 0; col < size; ++col) {
    int piv = col;
    for (int r = col + 1; r < size; ++r) {
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    }
    if (std::abs(A[piv][col]) == 0.0) throw Error("singular evaluation system");
    std::swap(A[piv], A[col]);
    for (int r = col + 1; r < size; ++r) {
      const cplx f = A[r][col] / A[col][col];
      for (int c = col; c <= size; ++c) A[r][c] -= f * A[col][c];
    }
  }
  std::vector<cplx> c(size);
  for (int l = size - 1; l >= 0; --l) {
    cplx acc = A[l][size];
    for (int j = l + 1; j < size; ++j) acc -= A[l][j] * c[j];
    c[l] = acc / A[l][l];
  }
  return c;
}

Comparison compare(std::string formula, const EvalPoint& at, cplx closed, cplx oracle, double tol) {
  Comparison c;
  c.formula = std::move(formula);
  c.at = at;
  c.closed = closed;
  c.oracle = oracle;
  const double scale = std::max({std::abs(closed), std::abs(oracle), 1e-300});
  c.rel_error = std::abs(closed - oracle) / scale;
  c.pass = std::isfinite(c.rel_error) && c.rel_error <= tol;
  return c;
}

nlohmann::json to_json(const EvalPoint& at) {
  return {{"q", at.q}, {"s", pair(at.s)}, {"s0", pair(at.s0)}, {"s1", pair(at.s1)}, {"s2", pair(at.s2)}};
}

nlohmann::json to_json(const Comparison& c) {
  return {{"formula", c.formula}, {"point", to_json(c.at)},  {"closed", pair(c.closed)},
          {"oracle", pair(c.oracle)}, {"rel_error", c.rel_error}, {"pass", c.pass}};
}

}  // namespace gl2lab::oracle
