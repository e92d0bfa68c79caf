#include <cmath>

#include "gl2lab/errors.hpp"
#include "gl2lab/symring.hpp"

namespace gl2lab::sym {

namespace {

Poly exact_div(const Poly& a, const Poly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw Error("internal: inexact division during normalization");
  return *std::move(q);
}

// Divide a Laurent polynomial by a polynomial known to divide it up to a monomial.
Poly div_laurent(const Poly& n, const Poly& g) {
  if (g.is_constant()) return n.scaled(1 / g.lead().c);
  const Exps m = n.min_exps();
  return exact_div(n.shifted(negate(m)), g).shifted(m);
}

Poly gcd_core(const Poly& laurent, const Poly& poly) {
  if (poly.is_constant() || laurent.is_zero()) return Poly(1);
  return gcd(laurent.shifted(negate(laurent.min_exps())), poly);
}

}  // namespace

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(1) {
  if (!num_.is_zero()) {
    const auto li = static_cast<std::size_t>(Var::L);
    if (num_.min_exps()[li] < 0) throw DomainError("negative power of L");
  }
}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  normalize(true);
}

RatFunc::RatFunc(Poly num, Poly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {
  normalize(false);
}

void RatFunc::normalize(bool reduce) {
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  const Exps md = den_.min_exps();
  if (md != Exps{}) {
    den_ = den_.shifted(negate(md));
    num_ = num_.shifted(negate(md));
  }
  if (reduce && !den_.is_constant()) {
    const Exps mn = num_.min_exps();
    Poly np = num_.shifted(negate(mn));
    const Poly g = gcd(np, den_);
    if (!g.is_constant()) {
      np = exact_div(np, g);
      den_ = exact_div(den_, g);
    }
    num_ = np.shifted(mn);
  }
  const mpq_class lc = den_.lead().c;
  if (lc != 1) {
    const mpq_class inv = 1 / lc;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
  if (num_.min_exps()[static_cast<std::size_t>(Var::L)] < 0) {
    throw DomainError("negative power of L");
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    if (a.den_.is_one()) return RatFunc(a.num_ + b.num_);
    return {a.num_ + b.num_, a.den_};
  }
  const Poly g = gcd(a.den_, b.den_);
  if (g.is_constant()) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, RatFunc::Reduced{}};
  }
  const Poly da = exact_div(a.den_, g);
  const Poly db = exact_div(b.den_, g);
  Poly num = a.num_ * db + b.num_ * da;
  Poly den = a.den_ * db;
  const Poly h = gcd_core(num, g);
  if (!h.is_constant()) {
    num = div_laurent(num, h);
    den = exact_div(den, h);
  }
  return {std::move(num), std::move(den), RatFunc::Reduced{}};
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.den_.is_one() && b.den_.is_one()) return RatFunc(a.num_ * b.num_);
  const Poly g1 = gcd_core(a.num_, b.den_);
  const Poly g2 = gcd_core(b.num_, a.den_);
  Poly num = div_laurent(a.num_, g1) * div_laurent(b.num_, g2);
  Poly den = exact_div(a.den_, g2) * exact_div(b.den_, g1);
  return {std::move(num), std::move(den), RatFunc::Reduced{}};
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero rational function");
  return {den_, num_, Reduced{}};
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

std::string RatFunc::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RatFunc apply_map(const RatFunc& r, const MonomialMap& m) {
  return {apply_map(r.num(), m), apply_map(r.den(), m)};
}

RatFunc d_ds(const RatFunc& r, Var v) {
  if (r.den().is_one()) return RatFunc(d_ds(r.num(), v));
  // With g = gcd(D, D'): (N/D)' = (N' D/g - N D'/g) / (D D/g), reduced against D.
  const Poly& D = r.den();
  const Poly dD = d_ds(D, v);
  const Poly g = dD.is_zero() ? D : gcd(D, dD.shifted(negate(dD.min_exps())));
  const Poly Dg = exact_div(D, g);
  Poly num = d_ds(r.num(), v) * Dg - r.num() * div_laurent(dD, g);
  Poly den = D * Dg;
  const Poly h = gcd_core(num, D);
  if (!h.is_constant()) {
    num = div_laurent(num, h);
    den = exact_div(den, h);
  }
  return {std::move(num), std::move(den), RatFunc::Reduced{}};
}

const RatFunc& s_squared() {
  static const RatFunc r(Poly::var(Var::Q, 2) + Poly(1), Poly::var(Var::Q, 2) - Poly(1));
  return r;
}

VarValues var_values(const EvalPoint& at) {
  if (at.q < 2) throw DomainError("evaluation point needs q >= 2");
  const double q = static_cast<double>(at.q);
  const double lq = std::log(q);
  VarValues vals;
  vals.v[0] = std::sqrt(q);
  vals.v[1] = std::exp(-at.s0 * lq);
  vals.v[2] = std::exp(-at.s * lq);
  vals.v[3] = std::exp(-at.s1 * lq);
  vals.v[4] = std::exp(-at.s2 * lq);
  vals.v[5] = lq;
  vals.S = std::sqrt((q + 1) / (q - 1));
  return vals;
}

namespace {

cplx ipow(cplx x, std::int32_t e) {
  if (e < 0) return 1.0 / ipow(x, -e);
  cplx r = 1.0;
  while (e != 0) {
    if ((e & 1) != 0) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

// Value and sum of absolute term values.
std::pair<cplx, double> eval_with_scale(const Poly& p, const VarValues& vals) {
  cplx sum = 0.0;
  double scale = 0.0;
  for (const auto& t : p.terms()) {
    cplx m = t.c.get_d();
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (t.e[i] != 0) m *= ipow(vals.v[i], t.e[i]);
    }
    sum += m;
    scale += std::abs(m);
  }
  return {sum, scale};
}

}  // namespace

cplx evaluate(const Poly& p, const VarValues& vals) { return eval_with_scale(p, vals).first; }

cplx substitute(const RatFunc& r, const VarValues& vals) {
  const cplx n = evaluate(r.num(), vals);
  if (r.den().is_one()) return n;
  const auto [d, scale] = eval_with_scale(r.den(), vals);
  if (std::abs(d) <= kPoleTolerance * scale) {
    throw PoleError("denominator " + r.den().str() + " vanishes at the evaluation point");
  }
  return n / d;
}

}  // namespace gl2lab::sym
