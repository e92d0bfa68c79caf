#pragma once

// Exact arithmetic in Q(Q, T0, T, T1, T2, L)[S] / (S^2 - (Q^2+1)/(Q^2-1)).
//
// Q = q^{1/2}, T0 = q^{-s0}, T = q^{-s}, T1 = q^{-s1}, T2 = q^{-s2}, L = log q.
// Polynomials are Laurent in every variable except L. Monomials are ordered
// lexicographically with Q > T0 > T > T1 > T2 > L; term lists are kept in
// descending order. A rational function is stored as N/D where D is a true
// polynomial without monomial factors, coprime to N, with leading coefficient 1.
// Under these rules structural equality is mathematical equality.

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gl2lab::sym {

enum class Var : std::uint8_t { Q = 0, T0 = 1, T = 2, T1 = 3, T2 = 4, L = 5 };
inline constexpr std::size_t kNumVars = 6;

using Exps = std::array<std::int32_t, kNumVars>;
using cplx = std::complex<double>;

struct Term {
  Exps e{};
  mpq_class c;
};

class Poly {
 public:
  Poly() = default;
  Poly(long c);  // NOLINT(google-explicit-constructor): integers embed naturally
  explicit Poly(const mpq_class& c);

  static Poly var(Var v, int power = 1);
  static Poly monomial(const Exps& e, const mpq_class& c = 1);
  // Sorts and merges an arbitrary term list.
  static Poly from_terms(std::vector<Term> terms);

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const;
  [[nodiscard]] bool is_one() const;
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] const Term& lead() const { return terms_.front(); }
  [[nodiscard]] int degree(Var v) const;
  // Componentwise minimum exponent (the monomial content).
  [[nodiscard]] Exps min_exps() const;
  // Multiply by the monomial with exponent vector e.
  [[nodiscard]] Poly shifted(const Exps& e) const;
  [[nodiscard]] Poly scaled(const mpq_class& c) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);

  [[nodiscard]] std::string str() const;

 private:
  std::vector<Term> terms_;
};

Exps negate(Exps e);

// Quotient a/b when b divides a in the polynomial ring; nullopt otherwise.
// Both arguments must have nonnegative exponents.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

// Greatest common divisor of two polynomials with nonnegative exponents,
// normalized to integer coefficients with positive leading coefficient.
Poly gcd(const Poly& a, const Poly& b);

// Monomial-to-monomial substitution: variable i goes to the monomial with
// exponent vector rows[i]. Covers T0 -> 1/T0, T0 -> T1, T1 -> 1, ...
using MonomialMap = std::array<Exps, kNumVars>;
MonomialMap identity_map();
Poly apply_map(const Poly& p, const MonomialMap& m);

// d/ds_v for v in {T0, T, T1, T2}: d(T_v^e) = -e * L * T_v^e.
Poly d_ds(const Poly& p, Var v);

class RatFunc {
 public:
  RatFunc() : num_(0), den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  explicit RatFunc(const mpq_class& c) : num_(c), den_(1) {}
  explicit RatFunc(Poly num);
  RatFunc(Poly num, Poly den);

  [[nodiscard]] const Poly& num() const { return num_; }
  [[nodiscard]] const Poly& den() const { return den_; }
  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  [[nodiscard]] RatFunc inverse() const;
  friend RatFunc d_ds(const RatFunc& r, Var v);

  [[nodiscard]] std::string str() const;

 private:
  struct Reduced {};
  RatFunc(Poly num, Poly den, Reduced);
  void normalize(bool reduce);

  Poly num_;
  Poly den_;
};

RatFunc apply_map(const RatFunc& r, const MonomialMap& m);
RatFunc d_ds(const RatFunc& r, Var v);

// (Q^2+1)/(Q^2-1)
const RatFunc& s_squared();

class SymElem {
 public:
  SymElem() = default;
  SymElem(long c) : a_(c) {}  // NOLINT(google-explicit-constructor)
  SymElem(RatFunc a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  SymElem(RatFunc a, RatFunc b) : a_(std::move(a)), b_(std::move(b)) {}

  static SymElem var(Var v, int power = 1) { return {RatFunc(Poly::var(v, power))}; }
  static SymElem S() { return {RatFunc(0), RatFunc(1)}; }
  static SymElem rational(long num, long den = 1) {
    return {RatFunc(mpq_class(num, den))};
  }

  // Value is a() + b() * S.
  [[nodiscard]] const RatFunc& a() const { return a_; }
  [[nodiscard]] const RatFunc& b() const { return b_; }
  [[nodiscard]] bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  SymElem operator-() const { return {-a_, -b_}; }
  friend SymElem operator+(const SymElem& x, const SymElem& y);
  friend SymElem operator-(const SymElem& x, const SymElem& y);
  friend SymElem operator*(const SymElem& x, const SymElem& y);
  friend SymElem operator/(const SymElem& x, const SymElem& y);
  SymElem& operator+=(const SymElem& y) { return *this = *this + y; }
  SymElem& operator-=(const SymElem& y) { return *this = *this - y; }
  SymElem& operator*=(const SymElem& y) { return *this = *this * y; }
  friend bool operator==(const SymElem& x, const SymElem& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

  [[nodiscard]] SymElem pow(int e) const;

  // Canonical text: "A" when B = 0, else "[A] + [B]*S"; parts print as "num" or "(num)/(den)".
  [[nodiscard]] std::string str() const;

 private:
  RatFunc a_;
  RatFunc b_;
};

enum class Op { add, sub, mul, div };
SymElem arith(const SymElem& a, const SymElem& b, Op op);

SymElem apply_map(const SymElem& x, const MonomialMap& m);
SymElem d_ds(const SymElem& x, Var v);

// Convenience substitutions.
SymElem invert_var(const SymElem& x, Var v);          // v -> 1/v
SymElem rename_var(const SymElem& x, Var from, Var to);
SymElem set_var_one(const SymElem& x, Var v);         // v -> 1

struct EvalPoint {
  std::int64_t q = 2;
  cplx s0{0.0, 0.0};
  cplx s{0.0, 0.0};
  cplx s1{0.0, 0.0};
  cplx s2{0.0, 0.0};
};

// Numeric values of Q, T0, T, T1, T2, L and S at an evaluation point.
struct VarValues {
  std::array<cplx, kNumVars> v{};
  double S = 0.0;
};
VarValues var_values(const EvalPoint& at);

cplx evaluate(const Poly& p, const VarValues& vals);
cplx substitute(const RatFunc& r, const VarValues& vals);
cplx substitute(const SymElem& x, const VarValues& vals);
cplx substitute(const SymElem& x, const EvalPoint& at);

// Exact rational value at Q = sqrt(q) when x involves only even powers of Q
// and no S part; nullopt otherwise.
std::optional<mpq_class> exact_value(const SymElem& x, std::int64_t q);

// Relative tolerance below which a denominator counts as vanishing.
inline constexpr double kPoleTolerance = 1e-12;

}  // namespace gl2lab::sym
