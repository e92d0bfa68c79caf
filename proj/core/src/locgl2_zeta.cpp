#include <cstdlib>

#include "gl2lab/errors.hpp"
#include "gl2lab/locgl2.hpp"

namespace gl2lab::local {

namespace {

SymElem T(int e = 1) { return SymElem::var(Var::T, e); }
SymElem V(Var v, int e = 1) { return SymElem::var(v, e); }

// 1 / sqrt(1 - q^{-2}) = Q^2 / ((Q^2 - 1) S)
SymElem inv_root_one_minus_q2() { return qhalf(2) / ((qhalf(2) - 1) * SymElem::S()); }

// q^{-1/2}(1+q^{-2s_x}) / sqrt(1-q^{-2})
SymElem kappa(Var x) {
  return qhalf(-1) * (SymElem(1) + V(x, 2)) * inv_root_one_minus_q2();
}

// Ratio of the l = 2 closed form built from the pair (b1, b2) standing for
// the first two entries of the data sequence.
SymElem second_ratio(const SymElem& b1, const SymElem& b2, Var x) {
  const SymElem k = kappa(x);
  const SymElem c11 = c_coeff(1, 1, x);
  const SymElem c22 = c_coeff(2, 2, x);
  return b2 / c22 - k * b1 / c11 + (k * c_coeff(1, 0, x) / c11 - c_coeff(2, 0, x) / c22);
}

// Products c(n,l;s1) * conj(c(n,l;conj s2)); the conjugation is the identity on
// the symbolic side because c has real coefficients.
SymElem cc(int n, int l) { return c_coeff(n, l, Var::T1) * c_coeff(n, l, Var::T2); }

LocalZetaClosedForm make(FormKind kind, int index, SymElem value) {
  LocalZetaClosedForm f;
  f.kind = kind;
  f.index = index;
  f.value = std::move(value);
  return f;
}

}  // namespace

std::string ConductorExponent::str() const {
  std::string out = constant.get_str();
  auto add = [&out](int c, const char* name) {
    if (c == 0) return;
    out += c > 0 ? " + " : " - ";
    if (std::abs(c) != 1) out += std::to_string(std::abs(c)) + "*";
    out += name;
  };
  add(cs, "s");
  add(cs0, "s0");
  add(cs1, "s1");
  add(cs2, "s2");
  return out;
}

std::string LocalZetaClosedForm::id() const {
  switch (kind) {
    case FormKind::spherical:
      return "spherical_zeta";
    case FormKind::ratio:
      return "zeta_ratio[" + std::to_string(index) + "]";
    case FormKind::rs_spherical:
      return "rs_spherical_zeta";
    case FormKind::rs_ratio:
      return "rs_zeta_ratio[" + std::to_string(index) + "]";
    case FormKind::herm_ratio:
      return "herm_zeta_ratio[" + std::to_string(index) + "]";
    case FormKind::rs_a:
      return "rs_a[" + std::to_string(index) + "]";
    case FormKind::herm_a:
      return "herm_a[" + std::to_string(index) + "]";
    case FormKind::mu:
      return "mu[" + std::to_string(index) + "]";
  }
  return "unknown";
}

LocalZetaClosedForm spherical_zeta() {
  const SymElem T0 = V(Var::T0);
  SymElem v = local_zeta(qhalf(-1) * T() / T0) * local_zeta(qhalf(-1) * T() * T0) /
              local_zeta(qhalf(-2) * T0 * T0);
  LocalZetaClosedForm f = make(FormKind::spherical, 0, std::move(v));
  f.conductor.constant = mpq_class(-1, 2);
  f.conductor.cs = 1;
  f.conductor.cs0 = -1;
  return f;
}

LocalZetaClosedForm zeta_ratio(int l) {
  if (std::abs(l) > kZetaRatioDepth) {
    throw Unsupported("zeta ratios are tabulated for |l| <= " + std::to_string(kZetaRatioDepth));
  }
  if (l < 0) {
    LocalZetaClosedForm f = zeta_ratio(-l);
    f.index = l;
    f.value = sym::invert_var(f.value, Var::T);
    return f;
  }
  SymElem v;
  if (l == 0) {
    v = SymElem(1);
  } else if (l == 1) {
    const SymElem c11 = c_coeff(1, 1);
    v = T() / c11 - c_coeff(1, 0) / c11;
  } else if (l == 2) {
    v = second_ratio(T(), T(2), Var::T0);
  } else {
    v = zeta_ratio_by_solve(l, false);
  }
  return make(FormKind::ratio, l, std::move(v));
}

SymElem zeta_ratio_by_solve(int l, bool dual) {
  if (l < 0 || l > kZetaRatioDepth) throw Unsupported("zeta ratio index out of range");
  std::vector<SymElem> a;
  for (int n = 0; n <= l; ++n) a.push_back(T(dual ? -n : n));
  return solve_transition(a, l, Var::T0)[l];
}

LocalZetaClosedForm rs_a_coeff(int n) {
  if (n < 0) throw DomainError("rs_a_coeff needs n >= 0");
  const SymElem T1 = V(Var::T1);
  const SymElem T2 = V(Var::T2);
  auto geo2 = [&](int k) -> SymElem {
    if (k == 0) return SymElem(0);
    const int sgn = k < 0 ? -1 : 1;
    const int m = std::abs(k);
    SymElem acc;
    for (int j = 0; j < m; ++j) acc += T2.pow(-(m - 1) + 2 * j);
    return sgn < 0 ? -acc : acc;
  };
  const SymElem bracket = geo2(n + 1) - qhalf(-2) * T() * (T1 + SymElem(1) / T1) * geo2(n) +
                          qhalf(-4) * T(2) * geo2(n - 1);
  SymElem v = qhalf(-n) * T(n) / (SymElem(1) - qhalf(-4) * T(2)) * bracket;
  return make(FormKind::rs_a, n, std::move(v));
}

LocalZetaClosedForm rs_spherical_zeta() {
  const SymElem T1 = V(Var::T1);
  const SymElem T2 = V(Var::T2);
  SymElem v(1);
  for (int e1 : {1, -1}) {
    for (int e2 : {1, -1}) v *= local_zeta(qhalf(-1) * T() * T1.pow(e1) * T2.pow(e2));
  }
  v = v / (local_zeta(qhalf(-2) * T1 * T1) * local_zeta(qhalf(-2) * T2 * T2) *
           local_zeta(qhalf(-2) * T(2)));
  LocalZetaClosedForm f = make(FormKind::rs_spherical, 0, std::move(v));
  f.conductor.constant = -1;
  f.conductor.cs = 1;
  return f;
}

LocalZetaClosedForm rs_zeta_ratio(int l) {
  const SymElem a1 = rs_a_coeff(1).value;
  if (l == 1) {
    const SymElem c11 = c_coeff(1, 1, Var::T1);
    return make(FormKind::rs_ratio, 1, qhalf(-1) * (a1 / c11 - c_coeff(1, 0, Var::T1) / c11));
  }
  if (l == 2) {
    // 1/sqrt(q^2-1) = 1/((Q^2-1) S)
    const SymElem pre = SymElem(1) / ((qhalf(2) - 1) * SymElem::S());
    return make(FormKind::rs_ratio, 2, pre * second_ratio(a1, rs_a_coeff(2).value, Var::T1));
  }
  throw Unsupported("Rankin-Selberg ratios are available for l in {1,2}");
}

LocalZetaClosedForm herm_a_coeff(int n) {
  if (n < 0) throw DomainError("herm_a_coeff needs n >= 0");
  const SymElem one_plus = SymElem(1) + qhalf(-2);
  SymElem v;
  if (n == 0) {
    v = SymElem(1);
  } else if (n == 1) {
    v = T(-1) * (SymElem(1) + qhalf(-2) * T(2)) / one_plus;
  } else if (n == 2) {
    v = T(-2) * (SymElem(1) + qhalf(-4) * T(4)) / one_plus +
        qhalf(-2) * (SymElem(1) - qhalf(-2)) / one_plus;
  } else {
    // Cell-by-cell sum over K / K0[n].
    const SymElem top = qhalf(2) / (qhalf(2) + 1);
    v = T(-n) * top + T(n) * qhalf(-2 * n) * top;
    for (int k = 1; k < n; ++k) {
      v += T(-(n - 2 * k)) * qhalf(-2 * k) * (qhalf(2) - 1) / (qhalf(2) + 1);
    }
  }
  return make(FormKind::herm_a, n, std::move(v));
}

namespace {

SymElem herm_ratio2(bool as_printed) {
  const SymElem one_plus = SymElem(1) + qhalf(-2);
  const SymElem one_minus = SymElem(1) - qhalf(-2);
  const SymElem sym12 = (SymElem(1) + V(Var::T1, 2)) * (SymElem(1) + V(Var::T2, 2));
  const SymElem c22 = cc(2, 2);
  const SymElem c11 = cc(1, 1);
  const SymElem first =
      (T(-2) * (SymElem(1) + qhalf(-4) * T(4)) / one_plus +
       qhalf(-2) * (qhalf(2) - 1) / (qhalf(2) + 1)) /
      c22;
  const SymElem middle_den =
      as_printed ? one_plus * one_minus * one_minus : one_plus * one_plus * one_minus;
  const SymElem middle =
      qhalf(-2) * T(-1) * sym12 / middle_den * (SymElem(1) + qhalf(-2) * T(2)) / c11;
  const SymElem last = qhalf(-2) * sym12 / (SymElem(1) - qhalf(-4)) * cc(1, 0) / c11;
  return first - middle - cc(2, 0) / c22 + last;
}

}  // namespace

LocalZetaClosedForm herm_zeta_ratio(int l) {
  if (l == 1) {
    const SymElem c11 = cc(1, 1);
    SymElem v = T(-1) / c11 * (SymElem(1) + qhalf(-2) * T(2)) / (SymElem(1) + qhalf(-2)) -
                cc(1, 0) / c11;
    return make(FormKind::herm_ratio, 1, std::move(v));
  }
  if (l == 2) return make(FormKind::herm_ratio, 2, herm_ratio2(false));
  throw Unsupported("hermitian ratios are available for l in {1,2}");
}

SymElem herm_zeta2_as_printed() { return herm_ratio2(true); }

SymElem unitarity_identity(int n) {
  if (n < 0) throw DomainError("unitarity_identity needs n >= 0");
  SymElem acc(-1);
  for (int l = 0; l <= n; ++l) {
    const SymElem c = c_coeff(n, l);
    acc += c * sym::invert_var(c, Var::T0);
  }
  return acc;
}

}  // namespace gl2lab::local
