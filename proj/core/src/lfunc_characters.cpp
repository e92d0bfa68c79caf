#include <cmath>
#include <numbers>
#include <numeric>

#include "gl2lab/errors.hpp"
#include "gl2lab/lfunc.hpp"

namespace gl2lab::lfunc {

namespace {

struct Component {
  std::int64_t p = 2;
  int e = 1;
  std::int64_t mod = 1;
  int ord = 1;
  enum Kind { cyclic, sign, five } kind = cyclic;
  std::vector<int> dlog;  // indexed by n mod `mod`, -1 for non-units
};

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t q) {
  std::vector<std::pair<std::int64_t, int>> f;
  for (std::int64_t p = 2; p * p <= q; ++p) {
    int e = 0;
    while (q % p == 0) {
      q /= p;
      ++e;
    }
    if (e > 0) f.emplace_back(p, e);
  }
  if (q > 1) f.emplace_back(q, 1);
  return f;
}

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::int64_t primitive_root_odd(std::int64_t p, int e) {
  const auto phi_p = p - 1;
  std::vector<std::int64_t> primes;
  for (const auto& [r, k] : factorize(phi_p)) primes.push_back(r);
  std::int64_t g = 2;
  for (;; ++g) {
    bool ok = true;
    for (auto r : primes) ok = ok && powmod(g, phi_p / r, p) != 1;
    if (ok) break;
  }
  // g generates (Z/p^2)^x unless g^{p-1} = 1 mod p^2; then g + p does.
  if (e >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
  return g;
}

std::vector<Component> components(std::int64_t q) {
  std::vector<Component> out;
  for (const auto& [p, e] : factorize(q)) {
    std::int64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (p != 2) {
      Component c{p, e, pe, static_cast<int>(pe / p * (p - 1)), Component::cyclic, std::vector<int>(pe, -1)};
      const std::int64_t g = primitive_root_odd(p, e);
      std::int64_t x = 1;
      for (int k = 0; k < c.ord; ++k) {
        c.dlog[x] = k;
        x = x * g % pe;
      }
      out.push_back(std::move(c));
      continue;
    }
    if (e == 1) continue;  // (Z/2)^x is trivial
    Component s{2, e, pe, 2, Component::sign, std::vector<int>(pe, -1)};
    if (e == 2) {
      s.dlog[1] = 0;
      s.dlog[3] = 1;
      out.push_back(std::move(s));
      continue;
    }
    Component f{2, e, pe, static_cast<int>(pe / 4), Component::five, std::vector<int>(pe, -1)};
    std::int64_t x = 1;
    for (int b = 0; b < f.ord; ++b) {
      s.dlog[x] = 0;
      s.dlog[pe - x] = 1;
      f.dlog[x] = b;
      f.dlog[pe - x] = b;
      x = x * 5 % pe;
    }
    out.push_back(std::move(s));
    out.push_back(std::move(f));
  }
  return out;
}

int vp(std::int64_t x, std::int64_t p) {
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

std::int64_t conductor_of(const std::vector<Component>& comps, const std::vector<int>& k) {
  std::int64_t cond = 1;
  std::size_t i = 0;
  while (i < comps.size()) {
    const Component& c = comps[i];
    int f = 0;
    if (c.kind == Component::cyclic) {
      const int o = c.ord / std::gcd(c.ord, k[i]);
      if (o > 1) f = 1 + vp(o, c.p);
      ++i;
    } else {
      const bool odd = k[i] == 1;
      int o5 = 1;
      if (i + 1 < comps.size() && comps[i + 1].kind == Component::five) {
        const int ord5 = comps[i + 1].ord;
        o5 = ord5 / std::gcd(ord5, k[i + 1]);
        i += 2;
      } else {
        ++i;
      }
      if (o5 > 1) {
        f = vp(o5, 2) + 2;
      } else if (odd) {
        f = 2;
      }
    }
    for (int j = 0; j < f; ++j) cond *= c.p;
  }
  return cond;
}

std::vector<cplx> additive_roots(std::int64_t q) {
  std::vector<cplx> e(static_cast<std::size_t>(q));
  for (std::int64_t a = 0; a < q; ++a) e[a] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(a) / q);
  return e;
}

cplx gauss_with(const DirichletCharacter& chi, const std::vector<cplx>& e) {
  if (chi.q == 1) return 1.0;
  cplx acc = 0.0;
  for (std::int64_t a = 1; a < chi.q; ++a) {
    if (chi.index[a] >= 0) acc += chi.values[a] * e[a];
  }
  return acc;
}

// Everything about (Z/q)^x that does not depend on the character.
struct Group {
  std::int64_t q = 1;
  std::vector<Component> comps;
  int order = 1;  // exponent of the group
  std::vector<std::int64_t> units;
  // log[i][j]: discrete log of units[j] in component i, scaled to Z/order
  std::vector<std::vector<std::int64_t>> log;
  std::vector<cplx> roots;     // order-th roots of unity
  std::vector<cplx> additive;  // q-th roots of unity

  explicit Group(std::int64_t modulus) : q(modulus), comps(components(modulus)), additive(additive_roots(modulus)) {
    for (const Component& c : comps) order = std::lcm(order, c.ord);
    for (std::int64_t n = 0; n < q; ++n) {
      if (std::gcd(n, q) == 1) units.push_back(n);
    }
    log.resize(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const std::int64_t scale = order / comps[i].ord;
      for (auto n : units) log[i].push_back(comps[i].dlog[n % comps[i].mod] * scale);
    }
    roots.resize(static_cast<std::size_t>(order));
    for (int j = 0; j < order; ++j) roots[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / order);
  }
};

DirichletCharacter build(const Group& G, const std::vector<int>& k) {
  const std::int64_t q = G.q;
  DirichletCharacter chi;
  chi.q = q;
  chi.exponents = k;
  chi.order = G.order;
  chi.index.assign(static_cast<std::size_t>(q), -1);
  chi.values.assign(static_cast<std::size_t>(q), 0.0);
  for (std::size_t j = 0; j < G.units.size(); ++j) {
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < k.size(); ++i) idx += k[i] * G.log[i][j];
    const auto n = static_cast<std::size_t>(G.units[j]);
    chi.index[n] = static_cast<int>(idx % G.order);
    chi.values[n] = G.roots[chi.index[n]];
  }
  if (q == 1) {
    chi.index[0] = 0;
    chi.values[0] = 1.0;
  }
  chi.parity = q > 2 && 2 * chi.index[q - 1] == chi.order ? 1 : 0;
  chi.conductor = conductor_of(G.comps, k);
  chi.primitive = chi.conductor == q;
  chi.label = std::to_string(q) + ":";
  for (std::size_t i = 0; i < k.size(); ++i) chi.label += (i ? "." : "") + std::to_string(k[i]);
  if (chi.primitive) chi.gauss = gauss_with(chi, G.additive);
  return chi;
}

}  // namespace

cplx DirichletCharacter::operator()(std::int64_t n) const {
  const std::int64_t r = ((n % q) + q) % q;
  return values[static_cast<std::size_t>(r)];
}

bool DirichletCharacter::is_real() const {
  for (int i : index) {
    if (i >= 0 && (2 * i) % order != 0) return false;
  }
  return true;
}

DirichletCharacter DirichletCharacter::conj() const {
  DirichletCharacter c = *this;
  for (std::size_t i = 0; i < c.index.size(); ++i) {
    if (c.index[i] > 0) c.index[i] = order - c.index[i];
    c.values[i] = std::conj(values[i]);
  }
  const auto comps = components(q);
  c.label = std::to_string(q) + ":";
  for (std::size_t i = 0; i < c.exponents.size(); ++i) {
    c.exponents[i] = (comps[i].ord - c.exponents[i]) % comps[i].ord;
    c.label += (i ? "." : "") + std::to_string(c.exponents[i]);
  }
  c.gauss = primitive ? gauss_sum(c) : cplx{};
  return c;
}

void for_each_character(std::int64_t q, bool primitive_only,
                        const std::function<void(const DirichletCharacter&)>& fn) {
  if (q < 1 || q > 100000) throw DomainError("character tables cover 1 <= q <= 100000");
  const Group G(q);
  std::vector<int> k(G.comps.size(), 0);
  for (;;) {
    if (!primitive_only || conductor_of(G.comps, k) == q) fn(build(G, k));
    std::size_t i = 0;
    while (i < k.size() && ++k[i] == G.comps[i].ord) k[i++] = 0;
    if (i == k.size()) break;
  }
}

std::vector<DirichletCharacter> enumerate_characters(std::int64_t q, bool primitive_only) {
  std::vector<DirichletCharacter> out;
  for_each_character(q, primitive_only, [&out](const DirichletCharacter& c) { out.push_back(c); });
  return out;
}

std::int64_t count_primitive(std::int64_t q) {
  if (q < 1) throw DomainError("modulus must be >= 1");
  std::int64_t n = q;
  for (const auto& [p, e] : factorize(q)) {
    if (e == 1) {
      n = n / p * (p - 2);
    } else {
      n = n / (p * p) * (p - 1) * (p - 1);
    }
  }
  return n;
}

cplx gauss_sum(const DirichletCharacter& chi) {
  if (!chi.primitive) throw DomainError("Gauss sums are taken for primitive characters");
  return gauss_with(chi, additive_roots(chi.q));
}

}  // namespace gl2lab::lfunc
