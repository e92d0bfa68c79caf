#pragma once

// Rational functions in a single variable s over Q, used for the archimedean
// intertwining factors, which do not involve q.

#include <complex>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gl2lab::sym {

class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<mpq_class> coeffs);  // coeffs[k] multiplies s^k
  static UniPoly linear(const mpq_class& c0, const mpq_class& c1);

  [[nodiscard]] const std::vector<mpq_class>& coeffs() const { return c_; }
  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] std::complex<double> eval(std::complex<double> s) const;
  [[nodiscard]] std::string str() const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  [[nodiscard]] UniPoly scaled(const mpq_class& k) const;
  // Quotient and remainder.
  [[nodiscard]] std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

UniPoly gcd(UniPoly a, UniPoly b);  // monic

// num/den reduced, den monic.
class UniRational {
 public:
  UniRational() : num_(std::vector<mpq_class>{}), den_(std::vector<mpq_class>{1}) {}
  UniRational(UniPoly num, UniPoly den);

  [[nodiscard]] const UniPoly& num() const { return num_; }
  [[nodiscard]] const UniPoly& den() const { return den_; }
  [[nodiscard]] std::complex<double> eval(std::complex<double> s) const;
  [[nodiscard]] std::string str() const;

  friend UniRational operator*(const UniRational& a, const UniRational& b);
  friend UniRational operator/(const UniRational& a, const UniRational& b);
  friend bool operator==(const UniRational& a, const UniRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  UniPoly num_;
  UniPoly den_;
};

}  // namespace gl2lab::sym
