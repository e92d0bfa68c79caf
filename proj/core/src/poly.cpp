#include <algorithm>
#include <sstream>

#include "gl2lab/errors.hpp"
#include "gl2lab/symring.hpp"

namespace gl2lab::sym {

namespace {

constexpr std::array<const char*, kNumVars> kVarNames = {"Q", "T0", "T", "T1", "T2", "L"};

// Lexicographic comparison; positive when a > b.
int lex_cmp(const Exps& a, const Exps& b) {
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  }
  return 0;
}

bool lex_greater(const Term& a, const Term& b) { return lex_cmp(a.e, b.e) > 0; }

Exps add_exps(const Exps& a, const Exps& b) {
  Exps r{};
  for (std::size_t i = 0; i < kNumVars; ++i) r[i] = a[i] + b[i];
  return r;
}

// a + sign*b, merging two descending term lists.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    int cmp = 0;
    if (i == a.size()) {
      cmp = -1;
    } else if (j == b.size()) {
      cmp = 1;
    } else {
      cmp = lex_cmp(a[i].e, b[j].e);
    }
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back(Term{b[j].e, sign > 0 ? mpq_class(b[j].c) : mpq_class(-b[j].c)});
      ++j;
    } else {
      mpq_class c = sign > 0 ? mpq_class(a[i].c + b[j].c) : mpq_class(a[i].c - b[j].c);
      if (c != 0) out.push_back(Term{a[i].e, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

// Integer-primitive form with positive leading coefficient.
Poly primitive(const Poly& p) {
  if (p.is_zero()) return p;
  mpz_class l = 1;
  mpz_class g = 0;
  for (const auto& t : p.terms()) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_num_mpz_t());
  }
  mpq_class f(l, g);
  f.canonicalize();
  if (p.lead().c < 0) f = -f;
  if (f == 1) return p;
  return p.scaled(f);
}

// Coefficients of p as a polynomial in v (index = degree). p must have
// nonnegative exponent in v.
std::vector<Poly> coeffs_in(const Poly& p, Var v) {
  const auto vi = static_cast<std::size_t>(v);
  int deg = p.degree(v);
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(deg) + 1);
  for (const auto& t : p.terms()) {
    Term c = t;
    c.e[vi] = 0;
    buckets[static_cast<std::size_t>(t.e[vi])].push_back(std::move(c));
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(Poly::from_terms(std::move(b)));
  return out;
}

Poly from_coeffs(const std::vector<Poly>& cs, Var v) {
  const auto vi = static_cast<std::size_t>(v);
  std::vector<Term> terms;
  for (std::size_t d = 0; d < cs.size(); ++d) {
    for (const auto& t : cs[d].terms()) {
      Term c = t;
      c.e[vi] += static_cast<std::int32_t>(d);
      terms.push_back(std::move(c));
    }
  }
  return Poly::from_terms(std::move(terms));
}

void trim(std::vector<Poly>& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

Poly gcd_rec(const Poly& a, const Poly& b);

Poly content(const std::vector<Poly>& coeffs) {
  std::vector<const Poly*> cs;
  for (const auto& c : coeffs) cs.push_back(&c);
  std::stable_sort(cs.begin(), cs.end(), [](const Poly* x, const Poly* y) {
    return x->terms().size() < y->terms().size();
  });
  Poly g;
  for (const Poly* cp : cs) {
    const Poly& c = *cp;
    if (c.is_zero()) continue;
    g = g.is_zero() ? primitive(c) : gcd_rec(g, c);
    if (g.is_constant()) return Poly(1);
  }
  return g;
}

// Scale all coefficients by one rational so that together they are integral and coprime.
void scalar_primitive(std::vector<Poly>& u) {
  mpz_class l = 1;
  mpz_class g = 0;
  for (const auto& c : u) {
    for (const auto& t : c.terms()) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_num_mpz_t());
    }
  }
  if (g == 0) return;
  mpq_class f(l, g);
  f.canonicalize();
  if (f == 1) return;
  for (auto& c : u) c = c.scaled(f);
}

Poly exact(const Poly& a, const Poly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw Error("internal: inexact polynomial division in gcd");
  return *std::move(q);
}

// Pseudo-remainder of u by v as polynomials in the main variable.
std::vector<Poly> prem(std::vector<Poly> u, const std::vector<Poly>& v) {
  const std::size_t dv = v.size() - 1;
  const Poly& lcv = v.back();
  while (!u.empty() && u.size() - 1 >= dv) {
    const std::size_t shift = u.size() - 1 - dv;
    const Poly lcu = u.back();
    for (auto& c : u) c = c * lcv;
    for (std::size_t i = 0; i <= dv; ++i) u[i + shift] = u[i + shift] - lcu * v[i];
    trim(u);
  }
  return u;
}

// Arithmetic modulo the Mersenne prime 2^61 - 1 for degree bounds.
constexpr std::uint64_t kMod = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(p & kMod) + static_cast<std::uint64_t>(p >> 61);
  if (r >= kMod) r -= kMod;
  return r;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e != 0) {
    if ((e & 1) != 0) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a) { return powmod(a, kMod - 2); }

std::optional<std::uint64_t> reduce_mod(const mpq_class& c) {
  const std::uint64_t n = mpz_fdiv_ui(c.get_num_mpz_t(), kMod);
  const std::uint64_t d = mpz_fdiv_ui(c.get_den_mpz_t(), kMod);
  if (d == 0) return std::nullopt;
  return mulmod(n, invmod(d));
}

// p with every variable except v specialized to pt, as a dense polynomial in v mod kMod.
std::optional<std::vector<std::uint64_t>> specialize(const Poly& p, Var v,
                                                     const std::array<std::uint64_t, kNumVars>& pt) {
  const auto vi = static_cast<std::size_t>(v);
  std::vector<std::uint64_t> out(static_cast<std::size_t>(p.degree(v)) + 1, 0);
  for (const auto& t : p.terms()) {
    auto c = reduce_mod(t.c);
    if (!c) return std::nullopt;
    std::uint64_t m = *c;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (i != vi && t.e[i] != 0) m = mulmod(m, powmod(pt[i], static_cast<std::uint64_t>(t.e[i])));
    }
    auto& slot = out[static_cast<std::size_t>(t.e[vi])];
    slot += m;
    if (slot >= kMod) slot -= kMod;
  }
  return out;
}

int degree_mod(std::vector<std::uint64_t>& u) {
  while (!u.empty() && u.back() == 0) u.pop_back();
  return static_cast<int>(u.size()) - 1;
}

int gcd_degree_mod(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
  degree_mod(a);
  degree_mod(b);
  while (!b.empty()) {
    const std::uint64_t inv = invmod(b.back());
    while (a.size() >= b.size()) {
      const std::uint64_t f = mulmod(a.back(), inv);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) {
        a[i + shift] = (a[i + shift] + kMod - mulmod(f, b[i])) % kMod;
      }
      degree_mod(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return degree_mod(a);
}

// Upper bound for the degree of gcd(a, b) in v, from one specialization of the
// other variables. Returns -1 when the specialization is unlucky.
int gcd_degree_bound(const Poly& a, const Poly& b, Var v) {
  static const std::array<std::uint64_t, kNumVars> kPoint = {
      0x1b873593a4c3ULL % kMod, 0xcc9e2d51f00dULL % kMod, 0x85ebca6b1234ULL % kMod,
      0xc2b2ae35abcdULL % kMod, 0x27d4eb2f4321ULL % kMod, 0x165667b19e37ULL % kMod};
  auto sa = specialize(a, v, kPoint);
  auto sb = specialize(b, v, kPoint);
  if (!sa || !sb) return -1;
  if (sa->back() == 0 || sb->back() == 0) return -1;
  return gcd_degree_mod(*sa, *sb);
}

Poly content_in(const Poly& p, Var v) { return content(coeffs_in(p, v)); }

Poly gcd_rec(const Poly& a, const Poly& b) {
  if (a.is_zero()) return primitive(b);
  if (b.is_zero()) return primitive(a);
  const Exps ma = a.min_exps();
  const Exps mb = b.min_exps();
  Exps mg{};
  for (std::size_t i = 0; i < kNumVars; ++i) mg[i] = std::min(ma[i], mb[i]);
  const Poly mono = Poly::monomial(mg);
  Poly A = a.shifted(negate(ma));
  Poly B = b.shifted(negate(mb));
  if (A.is_constant() || B.is_constant()) return mono;

  if (A.terms().size() >= B.terms().size()) {
    if (divide_exact(A, B)) return mono * primitive(B);
  } else if (divide_exact(B, A)) {
    return mono * primitive(A);
  }

  // Variables that cannot occur in the gcd are removed by passing to contents.
  Var main = Var::Q;
  int best = -1;
  for (std::size_t i = 0; i < kNumVars; ++i) {
    const Var v = static_cast<Var>(i);
    const int da = A.degree(v);
    const int db = B.degree(v);
    if (da == 0 && db == 0) continue;
    int bound = std::min(da, db);
    if (bound > 0) {
      const int mod_bound = gcd_degree_bound(A, B, v);
      if (mod_bound >= 0) bound = std::min(bound, mod_bound);
    }
    if (bound == 0) {
      const Poly ca = da > 0 ? content_in(A, v) : A;
      const Poly cb = db > 0 ? content_in(B, v) : B;
      return primitive(mono * gcd_rec(ca, cb));
    }
    if (best < 0 || std::max(da, db) < best) {
      best = std::max(da, db);
      main = v;
    }
  }

  auto ua = coeffs_in(A, main);
  auto ub = coeffs_in(B, main);
  const Poly ca = content(ua);
  const Poly cb = content(ub);
  const Poly gc = gcd_rec(ca, cb);
  for (auto& c : ua) c = exact(c, ca);
  for (auto& c : ub) c = exact(c, cb);
  scalar_primitive(ua);
  scalar_primitive(ub);
  if (ua.size() < ub.size()) std::swap(ua, ub);

  while (true) {
    auto r = prem(ua, ub);
    if (r.empty()) break;
    if (r.size() == 1) {
      ub = {Poly(1)};
      break;
    }
    const Poly cr = content(r);
    for (auto& c : r) c = exact(c, cr);
    scalar_primitive(r);
    ua = std::move(ub);
    ub = std::move(r);
  }
  return primitive(mono * gc * from_coeffs(ub, main));
}

}  // namespace

Exps negate(Exps e) {
  for (auto& x : e) x = -x;
  return e;
}

Poly::Poly(long c) {
  if (c != 0) terms_.push_back(Term{Exps{}, mpq_class(c)});
}

Poly::Poly(const mpq_class& c) {
  if (c != 0) {
    terms_.push_back(Term{Exps{}, c});
    terms_.back().c.canonicalize();
  }
}

Poly Poly::var(Var v, int power) {
  Exps e{};
  e[static_cast<std::size_t>(v)] = power;
  return monomial(e);
}

Poly Poly::monomial(const Exps& e, const mpq_class& c) {
  Poly p;
  if (c != 0) {
    p.terms_.push_back(Term{e, c});
    p.terms_.back().c.canonicalize();
  }
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  for (auto& t : terms) t.c.canonicalize();
  std::sort(terms.begin(), terms.end(), lex_greater);
  Poly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().e == t.e) {
      p.terms_.back().c += t.c;
    } else {
      if (!p.terms_.empty() && p.terms_.back().c == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().c == 0) p.terms_.pop_back();
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].e == Exps{});
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].e == Exps{} && terms_[0].c == 1;
}

int Poly::degree(Var v) const {
  const auto vi = static_cast<std::size_t>(v);
  int d = 0;
  bool first = true;
  for (const auto& t : terms_) {
    if (first || t.e[vi] > d) d = t.e[vi];
    first = false;
  }
  return d;
}

Exps Poly::min_exps() const {
  Exps m{};
  bool first = true;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (first || t.e[i] < m[i]) m[i] = t.e[i];
    }
    first = false;
  }
  return m;
}

Poly Poly::shifted(const Exps& e) const {
  Poly p = *this;
  for (auto& t : p.terms_) t.e = add_exps(t.e, e);
  return p;
}

Poly Poly::scaled(const mpq_class& c) const {
  if (c == 0) return {};
  Poly p = *this;
  for (auto& t : p.terms_) t.c *= c;
  return p;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.c = -t.c;
  return p;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly p;
  p.terms_ = merge(a.terms_, b.terms_, 1);
  return p;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly p;
  p.terms_ = merge(a.terms_, b.terms_, -1);
  return p;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (b.terms_.size() == 1) return a.shifted(b.terms_[0].e).scaled(b.terms_[0].c);
  if (a.terms_.size() == 1) return b.shifted(a.terms_[0].e).scaled(a.terms_[0].c);
  std::vector<Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) terms.push_back(Term{add_exps(x.e, y.e), x.c * y.c});
  }
  return Poly::from_terms(std::move(terms));
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].e != b.terms_[i].e || a.terms_[i].c != b.terms_[i].c) return false;
  }
  return true;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    mpq_class c = t.c;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    const bool unit_monomial = t.e == Exps{};
    bool wrote = false;
    if (c != 1 || unit_monomial) {
      os << c.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (t.e[i] == 0) continue;
      if (wrote) os << "*";
      os << kVarNames[i];
      if (t.e[i] != 1) os << "^" << t.e[i];
      wrote = true;
    }
  }
  return os.str();
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.is_zero()) return Poly{};
  if (b.is_constant()) return a.scaled(1 / b.lead().c);
  // Long division in the first variable of b, recursing into the coefficients.
  Var v = Var::Q;
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (b.degree(static_cast<Var>(i)) > 0) {
      v = static_cast<Var>(i);
      break;
    }
  }
  if (a.degree(v) < b.degree(v)) return std::nullopt;
  auto ua = coeffs_in(a, v);
  const auto ub = coeffs_in(b, v);
  const std::size_t db = ub.size() - 1;
  std::vector<Poly> quotient(ua.size() - db);
  for (std::size_t k = ua.size(); k-- > db;) {
    if (ua[k].is_zero()) continue;
    auto c = divide_exact(ua[k], ub[db]);
    if (!c) return std::nullopt;
    for (std::size_t i = 0; i <= db; ++i) ua[k - db + i] = ua[k - db + i] - *c * ub[i];
    quotient[k - db] = *std::move(c);
  }
  for (std::size_t k = 0; k < db; ++k) {
    if (!ua[k].is_zero()) return std::nullopt;
  }
  return from_coeffs(quotient, v);
}

Poly gcd(const Poly& a, const Poly& b) { return gcd_rec(a, b); }

MonomialMap identity_map() {
  MonomialMap m{};
  for (std::size_t i = 0; i < kNumVars; ++i) m[i][i] = 1;
  return m;
}

Poly apply_map(const Poly& p, const MonomialMap& m) {
  std::vector<Term> terms;
  terms.reserve(p.terms().size());
  for (const auto& t : p.terms()) {
    Exps e{};
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (t.e[i] == 0) continue;
      for (std::size_t j = 0; j < kNumVars; ++j) e[j] += t.e[i] * m[i][j];
    }
    terms.push_back(Term{e, t.c});
  }
  return Poly::from_terms(std::move(terms));
}

Poly d_ds(const Poly& p, Var v) {
  if (v == Var::Q || v == Var::L) throw DomainError("d_ds: variable is not of the form q^{-s}");
  const auto vi = static_cast<std::size_t>(v);
  const auto li = static_cast<std::size_t>(Var::L);
  std::vector<Term> terms;
  for (const auto& t : p.terms()) {
    if (t.e[vi] == 0) continue;
    Term d = t;
    d.c *= -t.e[vi];
    d.e[li] += 1;
    terms.push_back(std::move(d));
  }
  return Poly::from_terms(std::move(terms));
}

}  // namespace gl2lab::sym
