#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "gl2lab/errors.hpp"
#include "gl2lab/locgl2.hpp"

namespace gl2lab::local {

namespace {

constexpr double kPointTol = 1e-12;

SymElem nth_derivative(SymElem x, Var v, int k) {
  for (int i = 0; i < k; ++i) x = sym::d_ds(x, v);
  return x;
}

using Key = std::tuple<int, int, int, int, int, int>;

// Symbolic derivative for a sample; memoized because sweeps reuse a handful.
SymElem derivative_form(BoundKind kind, const BoundSample& b) {
  static std::mutex mu;
  static std::map<Key, SymElem> memo;
  const Key key{static_cast<int>(kind), b.n, b.l, b.k, b.k1, b.k2};
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  SymElem form;
  switch (kind) {
    case BoundKind::c_decay:
      form = nth_derivative(c_coeff(b.n, b.l), Var::T0, b.k);
      break;
    case BoundKind::zeta_ratio_decay:
      form = nth_derivative(rs_zeta_ratio(b.l).value, Var::T, b.n);
      break;
    case BoundKind::herm_decay:
      form = nth_derivative(nth_derivative(herm_zeta_ratio(b.l).value, Var::T1, b.k1), Var::T2, b.k2);
      break;
    case BoundKind::vertical_line:
      form = nth_derivative(zeta_ratio(b.l).value, Var::T0, b.n);
      break;
  }
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(key, std::move(form)).first->second;
}

bool near(std::complex<double> z, double re, double im = 0.0) {
  return std::abs(z.real() - re) <= kPointTol && std::abs(z.imag() - im) <= kPointTol;
}

double rhs(BoundKind kind, const BoundSample& b) {
  const double q = static_cast<double>(b.at.q);
  const double lq = std::log(q);
  switch (kind) {
    case BoundKind::c_decay: {
      if (b.n < 0 || b.l < 0 || b.l > b.n || b.k < 0) throw DomainError("c_decay needs 0 <= l <= n, k >= 0");
      const double nk = std::pow(static_cast<double>(b.n), b.k);
      if (std::abs(b.at.s0.real()) <= kPointTol) {
        return nk * std::pow(q, -0.5 * (b.n - b.l)) * std::pow(lq, b.k);
      }
      if (std::abs(b.at.s0.real() - 0.5) <= kPointTol) {
        if (b.l != 0) throw DomainError("c_decay on Re s0 = 1/2 covers l = 0 only");
        return nk * std::pow(lq, b.k);
      }
      throw DomainError("c_decay needs Re s0 in {0, 1/2}");
    }
    case BoundKind::zeta_ratio_decay:
      if (b.l < 1 || b.l > 2 || b.n < 0 || b.n > 6) throw DomainError("zeta_ratio_decay needs l in {1,2}, n <= 6");
      if (!near(b.at.s, 0) || !near(b.at.s1, 0) || !near(b.at.s2, 0)) {
        throw DomainError("zeta_ratio_decay is evaluated at s = s1 = s2 = 0");
      }
      return std::pow(q, -b.l) * std::pow(lq, b.n);
    case BoundKind::herm_decay:
      if (b.l < 1 || b.l > 2 || b.k1 < 0 || b.k1 > 2 || b.k2 < 0 || b.k2 > 2) {
        throw DomainError("herm_decay needs l in {1,2}, k1, k2 <= 2");
      }
      if (!near(b.at.s, 0.5) || !near(b.at.s1, 0.5) || !near(b.at.s2, 0.5)) {
        throw DomainError("herm_decay is evaluated at s = s1 = s2 = 1/2");
      }
      return std::pow(q, -b.l) * std::pow(lq, b.k1 + b.k2);
    case BoundKind::vertical_line:
      if (std::abs(b.l) > 1 || b.n < 0 || b.n > 2) throw DomainError("vertical_line needs |l| <= 1, n <= 2");
      if (b.at.s.real() <= 0.0) throw DomainError("vertical_line needs Re s = epsilon > 0");
      return std::pow(q, b.at.s.real() - 0.5) * std::pow(lq, b.n);
  }
  throw Error("unknown bound kind");
}

}  // namespace

std::string bound_kind_name(BoundKind kind) {
  switch (kind) {
    case BoundKind::c_decay:
      return "c_decay";
    case BoundKind::zeta_ratio_decay:
      return "zeta_ratio_decay";
    case BoundKind::herm_decay:
      return "herm_decay";
    case BoundKind::vertical_line:
      return "vertical_line";
  }
  return "unknown";
}

std::pair<double, double> bound_sides(BoundKind kind, const BoundSample& sample) {
  const double r = rhs(kind, sample);
  const double l = std::abs(sym::substitute(derivative_form(kind, sample), sample.at));
  return {l, r};
}

BoundReport bound_check(BoundKind kind, std::span<const BoundSample> samples, double constant) {
  if (!(constant > 0.0)) throw DomainError("bound constant must be positive");
  BoundReport rep;
  rep.kind = kind;
  rep.constant = constant;
  for (const BoundSample& b : samples) {
    const auto [lhs, r] = bound_sides(kind, b);
    double ratio = 0.0;
    if (r > 0.0) {
      ratio = lhs / r;
    } else if (lhs > 1e-300) {
      ratio = HUGE_VAL;
    }
    if (rep.count == 0 || ratio > rep.worst_ratio) {
      rep.worst_ratio = ratio;
      rep.worst = b;
    }
    ++rep.count;
  }
  rep.pass = rep.worst_ratio <= constant;
  return rep;
}

}  // namespace gl2lab::local
