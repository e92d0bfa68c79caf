#include <sstream>

#include "gl2lab/errors.hpp"
#include "gl2lab/unirational.hpp"

namespace gl2lab::sym {

UniPoly::UniPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::linear(const mpq_class& c0, const mpq_class& c1) { return UniPoly({c0, c1}); }

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::complex<double> UniPoly::eval(std::complex<double> s) const {
  std::complex<double> r = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * s + it->get_d();
  return r;
}

std::string UniPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    mpq_class c = c_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    if (!first && c < 0) c = -c;
    if (first && c < 0 && k > 0 && c == -1) {
      os << "-";
      c = 1;
    }
    first = false;
    if (k == 0 || c != 1) os << c.get_str() << (k > 0 ? "*" : "");
    if (k > 0) os << "s";
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<mpq_class> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + b.scaled(-1); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return UniPoly(std::move(c));
}

UniPoly UniPoly::scaled(const mpq_class& k) const {
  std::vector<mpq_class> c = c_;
  for (auto& x : c) x *= k;
  return UniPoly(std::move(c));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
  if (d.is_zero()) throw DivisionByZero("univariate division by zero");
  std::vector<mpq_class> r = c_;
  const int dd = d.degree();
  if (degree() < dd) return {UniPoly{}, *this};
  std::vector<mpq_class> q(static_cast<std::size_t>(degree() - dd + 1));
  for (int k = degree(); k >= dd; --k) {
    const mpq_class f = r[static_cast<std::size_t>(k)] / d.c_.back();
    q[static_cast<std::size_t>(k - dd)] = f;
    for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(k - dd + j)] -= f * d.c_[static_cast<std::size_t>(j)];
  }
  return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.scaled(1 / a.coeffs().back());
}

UniRational::UniRational(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero("univariate rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = UniPoly({1});
    return;
  }
  const UniPoly g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_.divmod(g).first;
    den_ = den_.divmod(g).first;
  }
  const mpq_class lc = den_.coeffs().back();
  num_ = num_.scaled(1 / lc);
  den_ = den_.scaled(1 / lc);
}

std::complex<double> UniRational::eval(std::complex<double> s) const {
  const auto d = den_.eval(s);
  if (std::abs(d) == 0.0) throw PoleError("archimedean factor has a pole at this s");
  return num_.eval(s) / d;
}

std::string UniRational::str() const {
  if (den_.degree() == 0) return "(" + num_.str() + ")";
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

UniRational operator*(const UniRational& a, const UniRational& b) {
  return {a.num_ * b.num_, a.den_ * b.den_};
}

UniRational operator/(const UniRational& a, const UniRational& b) {
  if (b.num_.is_zero()) throw DivisionByZero("division by zero univariate rational");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

}  // namespace gl2lab::sym
