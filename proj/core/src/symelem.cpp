#include <cstdlib>

#include "gl2lab/errors.hpp"
#include "gl2lab/symring.hpp"

namespace gl2lab::sym {

SymElem operator+(const SymElem& x, const SymElem& y) { return {x.a_ + y.a_, x.b_ + y.b_}; }

SymElem operator-(const SymElem& x, const SymElem& y) { return {x.a_ - y.a_, x.b_ - y.b_}; }

SymElem operator*(const SymElem& x, const SymElem& y) {
  if (x.b_.is_zero() && y.b_.is_zero()) return {x.a_ * y.a_};
  RatFunc a = x.a_ * y.a_;
  if (!x.b_.is_zero() && !y.b_.is_zero()) a = a + x.b_ * y.b_ * s_squared();
  RatFunc b = x.a_ * y.b_ + x.b_ * y.a_;
  return {std::move(a), std::move(b)};
}

SymElem operator/(const SymElem& x, const SymElem& y) {
  if (y.is_zero()) throw DivisionByZero("division by the zero element");
  if (y.b_.is_zero()) {
    const RatFunc inv = y.a_.inverse();
    return {x.a_ * inv, x.b_ * inv};
  }
  // (A + B S)^{-1} = (A - B S) / (A^2 - B^2 S^2); the norm is nonzero because S is irrational.
  const RatFunc norm = y.a_ * y.a_ - y.b_ * y.b_ * s_squared();
  const SymElem conj{y.a_, -y.b_};
  const SymElem num = x * conj;
  const RatFunc inv = norm.inverse();
  return {num.a_ * inv, num.b_ * inv};
}

SymElem SymElem::pow(int e) const {
  if (e < 0) return SymElem(1) / pow(-e);
  SymElem r(1);
  SymElem base = *this;
  while (e != 0) {
    if ((e & 1) != 0) r *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return r;
}

std::string SymElem::str() const {
  if (b_.is_zero()) return a_.str();
  return "[" + a_.str() + "] + [" + b_.str() + "]*S";
}

SymElem arith(const SymElem& a, const SymElem& b, Op op) {
  switch (op) {
    case Op::add:
      return a + b;
    case Op::sub:
      return a - b;
    case Op::mul:
      return a * b;
    case Op::div:
      return a / b;
  }
  throw Error("unknown arithmetic operation");
}

SymElem apply_map(const SymElem& x, const MonomialMap& m) {
  // S involves only Q; a map that moves Q would have to act on S as well.
  if (m[0] != identity_map()[0]) throw DomainError("monomial map must fix Q");
  return {apply_map(x.a(), m), apply_map(x.b(), m)};
}

SymElem d_ds(const SymElem& x, Var v) { return {d_ds(x.a(), v), d_ds(x.b(), v)}; }

SymElem invert_var(const SymElem& x, Var v) {
  MonomialMap m = identity_map();
  m[static_cast<std::size_t>(v)] = negate(m[static_cast<std::size_t>(v)]);
  return apply_map(x, m);
}

SymElem rename_var(const SymElem& x, Var from, Var to) {
  MonomialMap m = identity_map();
  m[static_cast<std::size_t>(from)] = Exps{};
  m[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)] = 1;
  return apply_map(x, m);
}

SymElem set_var_one(const SymElem& x, Var v) {
  MonomialMap m = identity_map();
  m[static_cast<std::size_t>(v)] = Exps{};
  return apply_map(x, m);
}

cplx substitute(const SymElem& x, const VarValues& vals) {
  cplx r = substitute(x.a(), vals);
  if (!x.b().is_zero()) r += substitute(x.b(), vals) * vals.S;
  return r;
}

namespace {

std::optional<mpq_class> exact_poly(const Poly& p, std::int64_t q) {
  mpq_class sum = 0;
  for (const auto& t : p.terms()) {
    for (std::size_t i = 1; i < kNumVars; ++i) {
      if (t.e[i] != 0) return std::nullopt;
    }
    if (t.e[0] % 2 != 0) return std::nullopt;
    const int e = t.e[0] / 2;
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), mpz_class(static_cast<long>(q)).get_mpz_t(),
               static_cast<unsigned long>(std::abs(e)));
    mpq_class term = t.c;
    if (e >= 0) {
      term *= mpq_class(pw);
    } else {
      term /= mpq_class(pw);
    }
    sum += term;
  }
  return sum;
}

}  // namespace

std::optional<mpq_class> exact_value(const SymElem& x, std::int64_t q) {
  if (!x.b().is_zero() || q < 2) return std::nullopt;
  const auto n = exact_poly(x.a().num(), q);
  const auto d = exact_poly(x.a().den(), q);
  if (!n || !d) return std::nullopt;
  if (*d == 0) throw PoleError("denominator vanishes at q = " + std::to_string(q));
  return mpq_class(*n / *d);
}

cplx substitute(const SymElem& x, const EvalPoint& at) { return substitute(x, var_values(at)); }

}  // namespace gl2lab::sym
