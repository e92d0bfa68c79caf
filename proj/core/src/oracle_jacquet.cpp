#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

#include "gl2lab/errors.hpp"
#include "gl2lab/oracle.hpp"

namespace gl2lab::oracle {

namespace {

constexpr int kInf = 1 << 28;

bool is_prime(std::int64_t q) {
  if (q < 2) return false;
  for (std::int64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

void require_prime(std::int64_t q) {
  if (!is_prime(q)) throw DomainError("the p-adic oracle runs over Q_p with p prime");
}

int val(const mpq_class& x, std::int64_t p) {
  if (x == 0) return kInf;
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  const mpz_class P = static_cast<long>(p);
  const auto up = mpz_remove(num.get_mpz_t(), num.get_mpz_t(), P.get_mpz_t());
  const auto down = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
  return static_cast<int>(up) - static_cast<int>(down);
}

mpz_class ipow(std::int64_t p, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return r;
}

// The integral of f(w n(x) g) psi(x p^m) dx, with f the section through e_l.
// w n(x) g has bottom row (alpha1 + beta1 x, alpha2 + beta2 x). The region
// p^{-K0} Z_p is cut into balls on which f is constant; outside it f is
// constant on each shell |x| = p^k.
class Jacquet {
 public:
  Jacquet(std::int64_t p, int l, const Mat2& g) : p_(p), l_(l), lp_(std::log(static_cast<double>(p))) {
    const mpq_class det = g[0] * g[3] - g[1] * g[2];
    if (det == 0) throw DomainError("singular matrix");
    dv_ = val(det, p);
    forms_[0] = {-g[0], -g[2], 0, 0};
    forms_[1] = {-g[1], -g[3], 0, 0};
    k0_ = 0;
    for (auto& L : forms_) {
      L.va = val(L.alpha, p);
      L.vb = val(L.beta, p);
      if (L.alpha != 0 && L.beta != 0) k0_ = std::max(k0_, L.vb - L.va);
    }
    k0_ += 1;
    pk0_ = ipow(p, k0_);
    split(0, -k0_);
    build_groups();
  }

  // W(m) vanishes identically below this index.
  [[nodiscard]] int support() const { return std::min(m_lo_, k0_); }

  [[nodiscard]] std::vector<cplx> values(cplx s0, const std::vector<double>& a, int first,
                                         int last) const {
    std::vector<cplx> out(static_cast<std::size_t>(std::max(0, last - first + 1)));
    const cplx h = 0.5 + s0;
    const cplx pre = -(0.5 - s0) * lp_;
    std::vector<cplx> gw;
    for (const Group& gr : groups_) gw.push_back(a[gr.cell] * std::exp(-static_cast<double>(gr.ht) * h * lp_));
    const double shell_mass = 1.0 - 1.0 / static_cast<double>(p_);
    auto shell_term = [&](int k, int m) {
      const auto [ht, cell] = shell(k);
      return a[cell] * std::exp(lp_ * (-static_cast<double>(ht) * h + static_cast<double>(m)) +
                                static_cast<double>(m) * pre);
    };
    cplx outer_acc = 0.0;  // sum over shells k0 < k <= m, times p^{-m(1/2-s0)}
    for (int m = std::min(first, k0_ + 1); m <= last; ++m) {
      if (m > k0_) outer_acc = outer_acc * std::exp(pre) + shell_term(m, m) * shell_mass;
      if (m < first) continue;
      cplx inner = 0.0;
      if (m >= m_lo_) {
        const std::size_t idx = static_cast<std::size_t>(std::min(m, k0_) - m_lo_);
        for (std::size_t i = 0; i < groups_.size(); ++i) inner += gw[i] * groups_[i].amp[idx];
      }
      cplx w = std::exp(static_cast<double>(m) * pre) * inner;
      if (m >= k0_) w += outer_acc - shell_term(m + 1, m);
      out[static_cast<std::size_t>(m - first)] = w;
    }
    return out;
  }

  // int f(w n(x) g) dx; converges for Re s0 > 0.
  [[nodiscard]] cplx untwisted(cplx s0, const std::vector<double>& a) const {
    if (!(s0.real() > 0.0)) throw DomainError("the untwisted integral needs Re s > 0");
    const cplx h = 0.5 + s0;
    cplx acc = 0.0;
    for (const Group& gr : groups_) {
      acc += a[gr.cell] * std::exp(-static_cast<double>(gr.ht) * h * lp_) * gr.mass;
    }
    const double shell_mass = 1.0 - 1.0 / static_cast<double>(p_);
    for (int k = k0_ + 1;; ++k) {
      const auto [ht, cell] = shell(k);
      const cplx t =
          a[cell] * std::exp(lp_ * (-static_cast<double>(ht) * h + static_cast<double>(k))) * shell_mass;
      acc += t;
      if (k > k0_ + l_ + 2 && std::abs(t) <= 1e-18 * std::abs(acc)) break;
      if (k > k0_ + 200000) throw DomainError("untwisted integral did not converge");
    }
    return acc;
  }

 private:
  struct Linear {
    mpq_class alpha, beta;
    int va, vb;
  };
  struct Piece {
    mpz_class n;  // ball centre n / p^{k0}
    int j;        // ball radius p^{-j}
    int ht, cell;
  };
  struct Group {
    int ht, cell;
    std::vector<cplx> amp;  // indexed by m - m_lo, up to m = k0
    double mass = 0.0;
  };

  [[nodiscard]] std::pair<int, int> phi(int v1, int v2) const {
    if (v1 >= v2) return {dv_ - 2 * v2, std::min(v1 - v2, l_)};
    return {dv_ - 2 * v1, 0};
  }

  [[nodiscard]] std::pair<int, int> shell(int k) const {
    auto v = [k](const Linear& L) { return L.beta == 0 ? L.va : L.vb - k; };
    return phi(v(forms_[0]), v(forms_[1]));
  }

  void split(const mpz_class& n, int j) {
    const mpq_class x0(n, pk0_);
    // {constant?, valuation or lower bound}
    auto info = [&](const Linear& L) -> std::pair<bool, int> {
      if (L.beta == 0) return {true, L.va};
      const int v0 = val(mpq_class(L.alpha + L.beta * x0), p_);
      const int lb = L.vb + j;
      if (v0 < lb) return {true, v0};
      return {false, lb};
    };
    const auto [c1, v1] = info(forms_[0]);
    const auto [c2, v2] = info(forms_[1]);
    if (c1 && c2) return add_piece(n, j, phi(v1, v2));
    if (!c1 && c2 && v1 - v2 >= l_) return add_piece(n, j, phi(v2 + l_, v2));
    if (c1 && !c2 && v2 > v1) return add_piece(n, j, phi(v1, v1 + 1));
    const mpz_class step = ipow(p_, j + k0_);
    for (std::int64_t t = 0; t < p_; ++t) split(n + step * static_cast<long>(t), j + 1);
  }

  void add_piece(const mpz_class& n, int j, std::pair<int, int> hc) {
    pieces_.push_back({n, j, hc.first, hc.second});
  }

  void build_groups() {
    m_lo_ = k0_;
    for (const Piece& pc : pieces_) m_lo_ = std::min(m_lo_, -pc.j);
    const std::size_t span = static_cast<std::size_t>(k0_ - m_lo_ + 1);
    std::map<std::pair<int, int>, Group> by_key;
    for (const Piece& pc : pieces_) {
      Group& gr = by_key[{pc.ht, pc.cell}];
      gr.ht = pc.ht;
      gr.cell = pc.cell;
      if (gr.amp.empty()) gr.amp.assign(span, 0.0);
      const double vol = std::pow(static_cast<double>(p_), -pc.j);
      gr.mass += vol;
      for (int m = std::max(-pc.j, m_lo_); m <= k0_; ++m) {
        const int e = k0_ - m;
        cplx phase = 1.0;
        if (e > 0) {
          const mpz_class pe = ipow(p_, e);
          const mpz_class r = pc.n % pe;
          const double frac = mpq_class(r, pe).get_d();
          phase = std::polar(1.0, 2.0 * std::numbers::pi * frac);
        }
        gr.amp[static_cast<std::size_t>(m - m_lo_)] += phase * vol;
      }
    }
    for (auto& [key, gr] : by_key) groups_.push_back(std::move(gr));
    pieces_.clear();
    pieces_.shrink_to_fit();
  }

  std::int64_t p_;
  int l_;
  double lp_;
  int dv_ = 0;
  int k0_ = 0;
  int m_lo_ = 0;
  mpz_class pk0_;
  std::array<Linear, 2> forms_;
  std::vector<Piece> pieces_;
  std::vector<Group> groups_;
};

using EngineKey = std::tuple<std::int64_t, int, std::string>;

std::shared_ptr<const Jacquet> engine(std::int64_t p, int l, const Mat2& g) {
  static std::mutex mu;
  static std::map<EngineKey, std::shared_ptr<const Jacquet>> cache;
  EngineKey key{p, l, g[0].get_str() + "," + g[1].get_str() + "," + g[2].get_str() + "," + g[3].get_str()};
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto made = std::make_shared<const Jacquet>(p, l, g);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::move(key), std::move(made)).first->second;
}

const std::vector<double>& vector_for(std::int64_t p, int l) {
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, int>, std::vector<double>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({p, l});
  if (it == cache.end()) it = cache.emplace(std::pair{p, l}, classical_vectors_numeric(p, l)[l]).first;
  return it->second;
}

std::vector<cplx> wvals(std::int64_t p, int l, const Mat2& g, cplx s0, int first, int last,
                        const Options& opt) {
  const auto J = engine(p, l, g);
  const auto& a = vector_for(p, l);
  if (!opt.trivial_psi) return J->values(s0, a, first, last);
  const cplx c = J->untwisted(s0, a);
  const double lp = std::log(static_cast<double>(p));
  std::vector<cplx> out;
  for (int m = first; m <= last; ++m) out.push_back(std::exp(-static_cast<double>(m) * (0.5 - s0) * lp) * c);
  return out;
}

struct Coset {
  Mat2 g;
  int cell;
  double vol;
};

// Representatives of K / K0[p^l]: n_-(u) for u in pZ/p^l and n(u) w for u in Z/p^l.
const std::vector<Coset>& cosets(std::int64_t p, int l) {
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, int>, std::vector<Coset>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find({p, l}); it != cache.end()) return it->second;
  std::vector<Coset> out;
  if (l == 0) {
    out.push_back({identity2(), 0, 1.0});
  } else {
    std::int64_t pl = 1;
    for (int i = 0; i < l; ++i) pl *= p;
    const double vol = 1.0 / (static_cast<double>(pl / p) * static_cast<double>(p + 1));
    for (std::int64_t u = 0; u < pl; u += p) {
      int cell = l;
      if (u != 0) cell = std::min(val(mpq_class(static_cast<long>(u)), p), l);
      out.push_back({Mat2{1, 0, mpq_class(static_cast<long>(u)), 1}, cell, vol});
    }
    for (std::int64_t u = 0; u < pl; ++u) {
      out.push_back({Mat2{mpq_class(static_cast<long>(-u)), 1, -1, 0}, 0, vol});
    }
  }
  return cache.emplace(std::pair{p, l}, std::move(out)).first->second;
}

struct Neumaier {
  double s = 0.0, c = 0.0;
  void add(double x) {
    const double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  [[nodiscard]] double value() const { return s + c; }
};

using TermFn = std::function<std::vector<cplx>(int first, int last)>;

// Sums t_first + ... + t_M, doubling M until the tail estimate passes. The
// estimate assumes |t_m| <= C (m - first + 1)^2 rho^m with rho = p^{-decay}.
ShellSum sum_series(std::int64_t p, std::string what, int first, double decay, const TermFn& terms,
                    const Options& opt) {
  if (!(decay > 0.0)) throw DomainError("series diverges for " + what + "; increase Re s");
  const double rho = std::pow(static_cast<double>(p), -decay);
  int M = std::max(opt.k_max, first + 8);
  for (;;) {
    const auto t = terms(first, M);
    Neumaier re, im;
    for (const cplx& z : t) {
      re.add(z.real());
      im.add(z.imag());
    }
    const cplx value(re.value(), im.value());
    const double span = static_cast<double>(M - first + 1);
    double env = 0.0;
    for (int i = 0; i < 4 && i < static_cast<int>(t.size()); ++i) {
      const double mag = std::abs(t[t.size() - 1 - static_cast<std::size_t>(i)]);
      const double w = (span - i) > 0 ? span / (span - i) : 1.0;
      env = std::max(env, mag * std::pow(rho, i) * w * w);
    }
    double tail = 0.0;
    double r = 1.0;
    for (int j = 1; j < 100000; ++j) {
      r *= rho;
      const double f = (span + j) / span;
      const double term = env * r * f * f;
      tail += term;
      if (term <= 1e-20 * tail) break;
    }
    if (tail <= opt.tail_tol * std::abs(value) || tail < 1e-300 || M >= opt.k_limit) {
      if (tail > opt.tail_tol * std::abs(value) && tail >= 1e-300) {
        throw DomainError("tail bound not reached for " + what + " by k = " + std::to_string(M));
      }
      ShellSum out;
      out.q = p;
      out.integrand = std::move(what);
      out.k_min = first;
      out.k_max = M;
      out.value = value;
      out.tail_bound = tail;
      return out;
    }
    M = std::min(2 * M, opt.k_limit);
  }
}

double exp_of(cplx z) { return std::abs(z.real()); }

// sum_m p^{-m expo} W_{l1}(s1, a(p^m)) W_{l2}(s2, a(p^m))
cplx product_integral(std::int64_t p, int l1, int l2, cplx s1, cplx s2, cplx expo, const Options& opt) {
  const int first = std::max(engine(p, l1, identity2())->support(), engine(p, l2, identity2())->support());
  const double lp = std::log(static_cast<double>(p));
  auto terms = [&](int lo, int hi) {
    const auto w1 = wvals(p, l1, identity2(), s1, lo, hi, opt);
    const auto w2 = wvals(p, l2, identity2(), s2, lo, hi, opt);
    std::vector<cplx> t;
    for (int m = lo; m <= hi; ++m) {
      const auto i = static_cast<std::size_t>(m - lo);
      t.push_back(w1[i] * w2[i] * std::exp(-static_cast<double>(m) * expo * lp));
    }
    return t;
  };
  const double decay = expo.real() + 1.0 - exp_of(s1) - exp_of(s2);
  return sum_series(p, "W_" + std::to_string(l1) + " W_" + std::to_string(l2), first, decay, terms, opt).value;
}

Mat2 shifted(const Mat2& g, int n, std::int64_t p) {
  const mpq_class d(ipow(p, n), 1);
  return Mat2{g[0] / d, g[1], g[2] / d, g[3]};
}

// sum_m p^{-m expo} sum_{k in K/K0[p^lc]} vol W_lw(s1, a(p^m) k a(p^-n)) conj(W_lw(conj s2, same))
cplx hermitian_integral(std::int64_t p, int lc, int lw, int n, cplx s1, cplx s2, cplx expo,
                        const Options& opt) {
  const auto& reps = cosets(p, lc);
  std::vector<Mat2> gs;
  int first = kInf;
  for (const Coset& c : reps) {
    gs.push_back(shifted(c.g, n, p));
    first = std::min(first, engine(p, lw, gs.back())->support());
  }
  const double lp = std::log(static_cast<double>(p));
  auto terms = [&](int lo, int hi) {
    std::vector<cplx> t(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const auto w1 = wvals(p, lw, gs[i], s1, lo, hi, opt);
      const auto w2 = wvals(p, lw, gs[i], std::conj(s2), lo, hi, opt);
      for (std::size_t k = 0; k < t.size(); ++k) t[k] += reps[i].vol * w1[k] * std::conj(w2[k]);
    }
    for (int m = lo; m <= hi; ++m) t[static_cast<std::size_t>(m - lo)] *= std::exp(-static_cast<double>(m) * expo * lp);
    return t;
  };
  const double decay = expo.real() + 1.0 - exp_of(s1) - exp_of(s2);
  return sum_series(p, "hermitian", first, decay, terms, opt).value;
}

void check_rs_index(int l) {
  if (l < 0 || l > 2) throw Unsupported("Rankin-Selberg oracles cover l <= 2");
}

double dim(std::int64_t p, int l) {
  const auto q = static_cast<double>(p);
  return l == 0 ? 1.0 : (l == 1 ? q : q * q - 1.0);
}

}  // namespace

Mat2 identity2() { return Mat2{1, 0, 0, 1}; }
Mat2 weyl() { return Mat2{0, 1, -1, 0}; }

std::vector<cplx> whittaker_values(std::int64_t p, int l, const Mat2& g, cplx s0, int m_first, int m_last,
                                   const Options& opt) {
  require_prime(p);
  if (l < 0) throw DomainError("K-type index must be >= 0");
  return wvals(p, l, g, s0, m_first, m_last, opt);
}

ShellSum zeta_by_summation(int l, const EvalPoint& at, bool dual, const Options& opt) {
  require_prime(at.q);
  if (l < 0 || l > 6) throw DomainError("zeta_by_summation covers 0 <= l <= 6");
  const std::int64_t p = at.q;
  const Mat2 g = dual ? weyl() : identity2();
  const double lp = std::log(static_cast<double>(p));
  auto terms = [&](int lo, int hi) {
    auto w = wvals(p, l, g, at.s0, lo, hi, opt);
    for (int m = lo; m <= hi; ++m) w[static_cast<std::size_t>(m - lo)] *= std::exp(-static_cast<double>(m) * at.s * lp);
    return w;
  };
  const double decay = at.s.real() + 0.5 - exp_of(at.s0);
  std::string what = "W_" + std::to_string(l) + (dual ? "(a(y) w)" : "(a(y))") + " |y|^s";
  return sum_series(p, std::move(what), engine(p, l, g)->support(), decay, terms, opt);
}

cplx zeta_ratio_by_summation(int l, const EvalPoint& at, bool dual, const Options& opt) {
  return zeta_by_summation(l, at, dual, opt).value / zeta_by_summation(0, at, false, opt).value;
}

cplx rs_by_summation(int l, const EvalPoint& at, const Options& opt) {
  require_prime(at.q);
  check_rs_index(l);
  if (l == 0) return product_integral(at.q, 0, 0, at.s1, at.s2, at.s - 0.5, opt);
  const cplx num = product_integral(at.q, l, 0, at.s1, at.s2, at.s, opt);
  const cplx den = product_integral(at.q, 0, 0, at.s1, at.s2, at.s, opt);
  return num / (std::sqrt(dim(at.q, l)) * den);
}

cplx rs_by_k_integral(int l, const EvalPoint& at, const Options& opt) {
  require_prime(at.q);
  check_rs_index(l);
  if (l == 0) return rs_by_summation(0, at, opt);
  const std::int64_t p = at.q;
  const auto& reps = cosets(p, l);
  const auto& a = vector_for(p, l);
  int first = kInf;
  for (const Coset& c : reps) first = std::min(first, engine(p, l, c.g)->support());
  first = std::max(first, engine(p, 0, identity2())->support());
  const double lp = std::log(static_cast<double>(p));
  auto terms = [&](int lo, int hi) {
    std::vector<cplx> t(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (const Coset& c : reps) {
      const auto w = wvals(p, l, c.g, at.s1, lo, hi, opt);
      for (std::size_t k = 0; k < t.size(); ++k) t[k] += c.vol * a[c.cell] * w[k];
    }
    const auto w0 = wvals(p, 0, identity2(), at.s2, lo, hi, opt);
    for (int m = lo; m <= hi; ++m) {
      const auto k = static_cast<std::size_t>(m - lo);
      t[k] *= w0[k] * std::exp(-static_cast<double>(m) * at.s * lp);
    }
    return t;
  };
  const double decay = at.s.real() + 1.0 - exp_of(at.s1) - exp_of(at.s2);
  const cplx num = sum_series(p, "K-integral", first, decay, terms, opt).value;
  return num / product_integral(p, 0, 0, at.s1, at.s2, at.s, opt);
}

cplx rs_a_by_summation(int n, const EvalPoint& at, const Options& opt) {
  require_prime(at.q);
  if (n < 0) throw DomainError("rs_a_by_summation needs n >= 0");
  const std::int64_t p = at.q;
  const double lp = std::log(static_cast<double>(p));
  const int first = engine(p, 0, identity2())->support() + n;
  auto terms = [&](int lo, int hi) {
    const auto w1 = wvals(p, 0, identity2(), at.s1, lo - n, hi - n, opt);
    const auto w2 = wvals(p, 0, identity2(), at.s2, lo, hi, opt);
    std::vector<cplx> t;
    for (int m = lo; m <= hi; ++m) {
      const auto i = static_cast<std::size_t>(m - lo);
      t.push_back(w1[i] * w2[i] * std::exp(-static_cast<double>(m) * at.s * lp));
    }
    return t;
  };
  const double decay = at.s.real() + 1.0 - exp_of(at.s1) - exp_of(at.s2);
  const cplx num = sum_series(p, "translated W_0 W_0", first, decay, terms, opt).value;
  return num / product_integral(p, 0, 0, at.s1, at.s2, at.s, opt);
}

cplx herm_by_summation(int l, const EvalPoint& at, const Options& opt) {
  require_prime(at.q);
  check_rs_index(l);
  if (l == 0) return hermitian_integral(at.q, 0, 0, 0, at.s1, at.s2, at.s - 0.5, opt);
  return hermitian_integral(at.q, l, l, 0, at.s1, at.s2, at.s, opt) /
         hermitian_integral(at.q, 0, 0, 0, at.s1, at.s2, at.s, opt);
}

cplx herm_a_by_summation(int n, const EvalPoint& at, const Options& opt) {
  require_prime(at.q);
  if (n < 0 || n > 4) throw DomainError("herm_a_by_summation covers 0 <= n <= 4");
  return hermitian_integral(at.q, n, 0, n, at.s1, at.s2, at.s, opt) /
         hermitian_integral(at.q, 0, 0, 0, at.s1, at.s2, at.s, opt);
}

cplx intertwining_by_integration(std::int64_t p, int l, cplx s) {
  require_prime(p);
  if (l < 0) throw DomainError("K-type index must be >= 0");
  const auto& a = vector_for(p, l);
  return engine(p, l, identity2())->untwisted(s, a) / a[l];
}

}  // namespace gl2lab::oracle
