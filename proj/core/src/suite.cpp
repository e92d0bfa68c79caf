#include "gl2lab/suite.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "gl2lab/errors.hpp"

namespace gl2lab::suite {

using local::BoundKind;
using local::BoundSample;
using sym::SymElem;
using sym::Var;

namespace {

SymElem Qv(int e) { return SymElem::var(Var::Q, e); }
SymElem Tv(int e) { return SymElem::var(Var::T, e); }
SymElem T0v(int e) { return SymElem::var(Var::T0, e); }

std::string indexed(const std::string& name, std::initializer_list<int> idx) {
  std::string s = name + "[";
  bool first = true;
  for (int i : idx) {
    s += (first ? "" : ",") + std::to_string(i);
    first = false;
  }
  return s + "]";
}

class Collector {
 public:
  explicit Collector(std::vector<IdentityCheck>& out) : out_(out) {}
  // Records one identity whose two sides must agree exactly.
  void zero(const std::string& family, const std::string& id, const std::function<SymElem()>& diff) {
    IdentityCheck c{family, id, false, ""};
    try {
      const SymElem d = diff();
      c.pass = d.is_zero();
      c.residue = c.pass ? "0" : clip(d.str());
    } catch (const std::exception& e) {
      c.residue = std::string("error: ") + e.what();
    }
    out_.push_back(std::move(c));
  }
  void fail(const std::string& family, const std::string& id, const std::string& why) {
    out_.push_back({family, id, false, why});
  }
  void ok(const std::string& family, const std::string& id) { out_.push_back({family, id, true, "0"}); }

 private:
  static std::string clip(std::string s) {
    if (s.size() > 240) s = s.substr(0, 240) + "...";
    return s;
  }
  std::vector<IdentityCheck>& out_;
};

void check_depth(const char* name, int v) {
  if (v < 0 || v > 6) throw DomainError(std::string(name) + " must lie in 0..6");
}

json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error("cannot open " + p.string());
  return json::parse(in);
}

json c_coeff_document() {
  json entries = json::array();
  for (int n = 0; n <= 4; ++n) {
    for (int l = 0; l <= n; ++l) entries.push_back({{"n", n}, {"l", l}, {"value", local::c_coeff(n, l).str()}});
  }
  return {{"schema", schema("golden.c_coeff")}, {"entries", entries}};
}

json zeta_document() {
  json entries = json::array();
  for (int l = 1; l <= 2; ++l) {
    const auto f = local::zeta_ratio(l);
    entries.push_back({{"id", f.id()}, {"value", f.value.str()}});
  }
  for (int l = 1; l <= 2; ++l) {
    const auto f = local::herm_zeta_ratio(l);
    entries.push_back({{"id", f.id()}, {"value", f.value.str()}});
  }
  return {{"schema", schema("golden.zeta_ratios")}, {"entries", entries}};
}

// Golden entries compared verbatim; canonical forms make string equality exact.
void check_golden(Collector& col, const std::string& dir, const std::string& file, const json& expected) {
  const std::string family = "golden";
  json got;
  try {
    got = read_json(std::filesystem::path(dir) / file);
  } catch (const std::exception& e) {
    col.fail(family, file, std::string("unreadable golden file: ") + e.what());
    return;
  }
  if (!got.is_object() || got.value("schema", "") != expected.at("schema")) {
    col.fail(family, file, "schema mismatch");
    return;
  }
  const json& want = expected.at("entries");
  const json& have = got.contains("entries") ? got.at("entries") : json::array();
  if (!have.is_array() || have.size() != want.size()) {
    col.fail(family, file, "entry count mismatch");
    return;
  }
  for (std::size_t i = 0; i < want.size(); ++i) {
    std::string id = file + "#" + std::to_string(i);
    if (want[i].contains("id")) id = file + "#" + want[i]["id"].get<std::string>();
    if (want[i].contains("n")) id = file + "#" + indexed("c", {want[i]["n"].get<int>(), want[i]["l"].get<int>()});
    if (have[i] == want[i]) {
      col.ok(family, id);
    } else {
      col.fail(family, id, "golden value differs from the computed form");
    }
  }
}

std::string mpq_str(const mpq_class& x) { return x.get_str(); }

json point_json(const sym::EvalPoint& at) { return oracle::to_json(at); }

}  // namespace

std::string schema(const std::string& kind) { return "gl2lab." + kind + "/" + std::to_string(kSchemaVersion); }

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------- verify

bool VerifyReport::pass() const { return failures() == 0 && !checks.empty(); }

std::size_t VerifyReport::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.pass ? 0 : 1;
  return n;
}

VerifyReport run_verify(const VerifyConfig& cfg) {
  check_depth("nmax", cfg.nmax);
  check_depth("lmax", cfg.lmax);
  VerifyReport rep;
  rep.config = cfg;
  Collector col(rep.checks);
  const int N = cfg.nmax;
  const int L = cfg.lmax;

  // Masses of D_0..D_m and K0[m+1] add up to one.
  for (int m = 0; m <= std::min(10, N + 4); ++m) {
    col.zero("mass_partition", indexed("mass_partition", {m}), [m] {
      const auto t = local::coset_masses(m);
      SymElem total = t.tail;
      for (const auto& w : t.w) total += w;
      return total - SymElem(1);
    });
  }

  {
    const int depth = L + 1;
    const auto w = local::coset_masses(depth - 1);
    const auto a = local::classical_vectors(L);
    for (int l = 0; l <= L; ++l) {
      for (int lp = 0; lp <= L; ++lp) {
        col.zero("orthonormality", indexed("orthonormality", {l, lp}), [&, l, lp] {
          SymElem acc = a.at(l, depth) * a.at(lp, depth) * local::coset_tail(depth);
          for (int n = 0; n < depth; ++n) acc += a.at(l, n) * a.at(lp, n) * w.w[n];
          return acc - SymElem(l == lp ? 1 : 0);
        });
      }
    }
  }

  for (int n = 0; n <= N; ++n) {
    col.zero("dimension", indexed("dimension", {n}), [n] {
      const SymElem a = local::classical_value(n, n);
      return local::dimension(n) - a * a;
    });
  }

  {
    const auto a = local::classical_vectors(std::min(5, N));
    for (int n = 0; n <= std::min(5, N); ++n) {
      for (int k = 0; k <= n; ++k) {
        col.zero("evaluation_system", indexed("evaluation_system", {n, k}), [&, n, k] {
          SymElem acc;
          for (int l = 0; l <= n; ++l) acc += local::c_coeff(n, l) * a.at(l, n - k);
          return acc - Qv(n - 2 * k) * T0v(-(n - 2 * k));
        });
      }
    }
  }

  {
    const SymElem P = Qv(-1) * (SymElem(1) + T0v(2));
    const SymElem R = Qv(-2) * T0v(2);
    const SymElem inv_root = Qv(2) / ((Qv(2) - 1) * SymElem::S());
    for (int n = 3; n <= N; ++n) {
      for (int l = 1; l <= n; ++l) {
        col.zero("tilde_c_recursion", indexed("tilde_c_recursion", {n, l}), [&, n, l] {
          const SymElem r = n == 3 ? R * inv_root : R;
          return local::c_tilde(n, l) - P * local::c_tilde(n - 1, l) + r * local::c_tilde(n - 2, l) -
                 SymElem(n == l ? 1 : 0);
        });
      }
    }
  }

  for (int len = 1; len <= std::min(7, N + 1); ++len) {
    col.zero("round_trip", indexed("round_trip", {len}), [len] {
      std::vector<SymElem> a;
      for (int n = 0; n < len; ++n) {
        a.push_back(SymElem::rational(n + 1) * Tv(n % 3 - 1) + SymElem::rational(2 - n) * Qv(-n) * T0v(n % 2));
      }
      const auto z = local::solve_transition(a, len - 1);
      const auto fwd = local::forward_transition(z);
      const auto back = local::solve_transition(local::forward_transition(a), len - 1);
      SymElem diff;
      for (int n = 0; n < len; ++n) {
        const SymElem d1 = fwd[n] - a[n];
        const SymElem d2 = back[n] - a[n];
        diff += d1 * d1 + d2 * d2 * Tv(7);  // separate monomials keep the two residues apart
      }
      return diff;
    });
  }

  for (int l = 1; l <= L; ++l) {
    col.zero("functional_equation", indexed("functional_equation", {l}), [l] {
      return local::zeta_ratio_by_solve(l, true) - sym::invert_var(local::zeta_ratio(l).value, Var::T);
    });
  }

  for (int n = 0; n <= N; ++n) {
    col.zero("unitarity", indexed("unitarity", {n}), [n] { return local::unitarity_identity(n); });
  }

  {
    auto cc = [](int n, int l) { return local::c_coeff(n, l, Var::T1) * local::c_coeff(n, l, Var::T2); };
    const SymElem z[] = {SymElem(1), local::herm_zeta_ratio(1).value, local::herm_zeta_ratio(2).value};
    for (int n = 0; n <= std::min(2, N); ++n) {
      col.zero("hermitian_system", indexed("hermitian_system", {n}), [&, n] {
        SymElem acc;
        for (int l = 0; l <= n; ++l) acc += cc(n, l) * z[l];
        return acc - local::herm_a_coeff(n).value;
      });
    }
  }

  if (!cfg.golden_dir.empty()) {
    check_golden(col, cfg.golden_dir, "c_coeff.json", c_coeff_document());
    check_golden(col, cfg.golden_dir, "zeta_ratios.json", zeta_document());
  }
  return rep;
}

json to_json(const VerifyReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"family", c.family}, {"id", c.id}, {"pass", c.pass}, {"residue", c.residue}});
  }
  return {{"schema", schema("verify")},
          {"config", {{"nmax", r.config.nmax}, {"lmax", r.config.lmax}, {"golden", !r.config.golden_dir.empty()}}},
          {"checked", r.checks.size()},
          {"failures", r.failures()},
          {"pass", r.pass()},
          {"checks", checks}};
}

// ---------------------------------------------------------------- oracle

bool OracleReport::pass() const {
  if (records.empty()) return false;
  for (const auto& c : records) {
    if (!c.pass) return false;
  }
  return true;
}

std::vector<oracle::EvalPoint> oracle_points(const OracleConfig& cfg) {
  if (cfg.points < 1) throw DomainError("oracle sweep needs at least one point");
  if (cfg.qs.empty()) throw DomainError("oracle sweep needs at least one residue field size");
  std::mt19937_64 rng(cfg.seed);
  // Draw raw 64-bit values so the sequence does not depend on the library's distributions.
  auto uniform = [&rng](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  std::vector<oracle::EvalPoint> pts;
  for (int i = 0; i < cfg.points; ++i) {
    oracle::EvalPoint at;
    at.q = cfg.qs[static_cast<std::size_t>(i) % cfg.qs.size()];
    at.s = {uniform(1.5, 3.0), uniform(-3.0, 3.0)};
    at.s0 = {uniform(-0.25, 0.25), uniform(-3.0, 3.0)};
    at.s1 = {uniform(-0.25, 0.25), uniform(-3.0, 3.0)};
    at.s2 = {uniform(-0.25, 0.25), uniform(-3.0, 3.0)};
    pts.push_back(at);
  }
  return pts;
}

OracleReport run_oracle(const OracleConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw DomainError("tolerance must be positive");
  OracleReport rep;
  rep.config = cfg;
  const auto pts = oracle_points(cfg);

  struct Formula {
    local::LocalZetaClosedForm form;
    std::function<oracle::cplx(const oracle::EvalPoint&)> brute;
  };
  std::vector<Formula> formulas;
  formulas.push_back({local::spherical_zeta(), [](const auto& at) { return oracle::zeta_by_summation(0, at).value; }});
  for (int l = 1; l <= 2; ++l) {
    formulas.push_back({local::zeta_ratio(l), [l](const auto& at) { return oracle::zeta_ratio_by_summation(l, at); }});
  }
  formulas.push_back({local::rs_spherical_zeta(), [](const auto& at) { return oracle::rs_by_summation(0, at); }});
  for (int n = 1; n <= 2; ++n) {
    formulas.push_back({local::rs_a_coeff(n), [n](const auto& at) { return oracle::rs_a_by_summation(n, at); }});
  }
  for (int l = 1; l <= 2; ++l) {
    formulas.push_back({local::rs_zeta_ratio(l), [l](const auto& at) { return oracle::rs_by_summation(l, at); }});
  }
  for (int n = 1; n <= 2; ++n) {
    formulas.push_back({local::herm_a_coeff(n), [n](const auto& at) { return oracle::herm_a_by_summation(n, at); }});
  }
  for (int l = 1; l <= 2; ++l) {
    formulas.push_back({local::herm_zeta_ratio(l), [l](const auto& at) { return oracle::herm_by_summation(l, at); }});
  }

  for (const auto& f : formulas) {
    const std::string id = f.form.id();
    for (const auto& at : pts) {
      auto c = oracle::compare(id, at, sym::substitute(f.form.value, at), f.brute(at), cfg.tol);
      if (c.rel_error > rep.worst_rel_error || rep.records.empty()) {
        rep.worst_rel_error = c.rel_error;
        rep.worst_formula = id;
      }
      rep.records.push_back(std::move(c));
    }
  }
  return rep;
}

json to_json(const OracleReport& r) {
  json recs = json::array();
  for (const auto& c : r.records) recs.push_back(oracle::to_json(c));
  return {{"schema", schema("oracle")},
          {"config",
           {{"points", r.config.points}, {"tol", r.config.tol}, {"seed", r.config.seed}, {"qs", r.config.qs}}},
          {"comparisons", r.records.size()},
          {"worst_rel_error", r.worst_rel_error},
          {"worst_formula", r.worst_formula},
          {"pass", r.pass()},
          {"records", recs}};
}

// ---------------------------------------------------------------- cosets

std::vector<CosetCheck> run_cosets() {
  const std::pair<int, int> cases[] = {{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {5, 1}};
  std::vector<CosetCheck> out;
  for (auto [q, m] : cases) {
    CosetCheck c;
    c.q = q;
    c.m = m;
    c.enumerated = oracle::coset_count(q, m).masses;
    const auto table = local::coset_masses(m - 1);
    for (int n = 0; n < m; ++n) c.symbolic.push_back(*sym::exact_value(table.w[n], q));
    c.symbolic.push_back(*sym::exact_value(table.tail, q));
    c.pass = c.enumerated == c.symbolic;
    out.push_back(std::move(c));
  }
  return out;
}

json to_json(std::span<const CosetCheck> checks) {
  json arr = json::array();
  bool all = !checks.empty();
  for (const auto& c : checks) {
    json e = json::array(), s = json::array();
    for (const auto& x : c.enumerated) e.push_back(mpq_str(x));
    for (const auto& x : c.symbolic) s.push_back(mpq_str(x));
    arr.push_back({{"q", c.q}, {"m", c.m}, {"enumerated", e}, {"symbolic", s}, {"pass", c.pass}});
    all = all && c.pass;
  }
  return {{"schema", schema("cosets")}, {"pass", all}, {"cases", arr}};
}

// ---------------------------------------------------------------- bounds

std::vector<BoundSample> bound_samples(BoundKind kind, const BoundsConfig& cfg) {
  static const std::int64_t primes97[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                          43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  static const std::int64_t spread[] = {2, 3, 5, 7, 11, 13, 23, 47, 97};
  std::vector<BoundSample> out;
  BoundSample b;
  switch (kind) {
    case BoundKind::c_decay:
      for (auto q : primes97) {
        b.at.q = q;
        for (int n = 0; n <= 4; ++n) {
          for (int k = 0; k <= 2; ++k) {
            b.n = n;
            b.k = k;
            for (double t : {0.0, 0.7, 2.5}) {
              b.at.s0 = {0.0, t};
              for (int l = 0; l <= n; ++l) {
                b.l = l;
                out.push_back(b);
              }
              b.at.s0 = {0.5, t};
              b.l = 0;
              out.push_back(b);
            }
          }
        }
      }
      break;
    case BoundKind::zeta_ratio_decay:
      for (auto q : spread) {
        b.at.q = q;
        for (int l = 1; l <= 2; ++l) {
          for (int n = 0; n <= 6; ++n) {
            b.l = l;
            b.n = n;
            out.push_back(b);
          }
        }
      }
      break;
    case BoundKind::herm_decay:
      b.at.s = 0.5;
      b.at.s1 = 0.5;
      b.at.s2 = 0.5;
      for (auto q : spread) {
        b.at.q = q;
        for (int l = 1; l <= 2; ++l) {
          for (int k1 = 0; k1 <= 2; ++k1) {
            for (int k2 = 0; k2 <= 2; ++k2) {
              b.l = l;
              b.k1 = k1;
              b.k2 = k2;
              out.push_back(b);
            }
          }
        }
      }
      break;
    case BoundKind::vertical_line:
      for (auto q : spread) {
        b.at.q = q;
        for (int l = -1; l <= 1; ++l) {
          for (int n = 0; n <= 2; ++n) {
            b.l = l;
            b.n = n;
            for (double t : {0.0, 0.5, 1.0, 2.0, 5.0}) {
              for (double t0 : {0.0, 0.3, 1.0, 2.0}) {
                b.at.s = {cfg.epsilon, t};
                b.at.s0 = {0.0, t0};
                out.push_back(b);
              }
            }
          }
        }
      }
      break;
  }
  return out;
}

std::vector<local::BoundReport> run_bounds(const BoundsConfig& cfg) {
  std::vector<local::BoundReport> out;
  for (BoundKind k : {BoundKind::c_decay, BoundKind::zeta_ratio_decay, BoundKind::herm_decay,
                      BoundKind::vertical_line}) {
    const auto samples = bound_samples(k, cfg);
    out.push_back(local::bound_check(k, samples, cfg.constant));
  }
  return out;
}

json to_json(std::span<const local::BoundReport> reports) {
  json arr = json::array();
  for (const auto& r : reports) {
    const auto& w = r.worst;
    arr.push_back({{"kind", local::bound_kind_name(r.kind)},
                   {"constant", r.constant},
                   {"samples", r.count},
                   {"worst_ratio", r.worst_ratio},
                   {"worst_at",
                    {{"point", point_json(w.at)}, {"n", w.n}, {"l", w.l}, {"k", w.k}, {"k1", w.k1}, {"k2", w.k2}}},
                   {"pass", r.pass}});
  }
  return {{"schema", schema("bounds")}, {"parts", arr}};
}

// ---------------------------------------------------------------- Mellin

DecayMeasurement mellin_decay() {
  DecayMeasurement d;
  for (double t = 5.0; t <= 50.0; t += 0.5) {
    d.constant = std::max(d.constant, std::abs(mellin::mellin_h0({d.sigma, t}, 4)) * std::pow(t, 4));
  }
  for (double t = 50.0; t <= 400.0; t += 7.0) {
    d.worst_beyond = std::max(d.worst_beyond, std::abs(mellin::mellin_h0({d.sigma, t}, 4)) * std::pow(t, 4));
  }
  return d;
}

// ---------------------------------------------------------------- golden

std::map<std::string, json> golden_documents() {
  std::map<std::string, json> docs;
  docs["c_coeff.json"] = c_coeff_document();
  docs["zeta_ratios.json"] = zeta_document();
  const auto d = mellin_decay();
  docs["mellin_decay.json"] = {{"schema", schema("golden.mellin_decay")},
                               {"sigma", d.sigma},
                               {"fit_range", {5.0, 50.0}},
                               {"check_range", {50.0, 400.0}},
                               {"constant", d.constant},
                               {"worst_beyond", d.worst_beyond}};
  const auto b = run_bounds({});
  json bounds = to_json(b);
  bounds["schema"] = schema("golden.bounds");
  docs["bounds.json"] = bounds;
  return docs;
}

void write_golden(const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, doc] : golden_documents()) {
    std::ofstream out(std::filesystem::path(dir) / name);
    if (!out) throw Error("cannot write " + name);
    out << doc.dump(2) << '\n';
  }
}

// ---------------------------------------------------------------- scan output

std::string scan_csv(std::span<const lfunc::ScanRecord> records, bool with_header) {
  std::ostringstream os;
  if (with_header) os << "q,label,abs_L,normalized,seconds\n";
  for (const auto& r : records) {
    os << r.q << ',' << r.label << ',' << fmt(r.abs_L) << ',' << fmt(r.normalized) << ',' << fmt(r.seconds) << '\n';
  }
  return os.str();
}

json scan_summary(std::span<const lfunc::ScanRecord> records, std::int64_t q_min, std::int64_t q_max,
                  const mpq_class& theta) {
  const auto fit = lfunc::exponent_fit(records);
  const auto blocks = lfunc::block_maxima_fit(records);
  const mpq_class target = lfunc::burgess_target(theta);
  json j = {{"schema", schema("scan_summary")},
            {"range", {q_min, q_max}},
            {"records", records.size()},
            {"fit_ok", fit.ok},
            {"slope", fit.ok ? json(fit.slope) : json(nullptr)},
            {"intercept", fit.ok ? json(fit.intercept) : json(nullptr)},
            {"residual", fit.ok ? json(fit.residual) : json(nullptr)},
            {"block_maxima_slope", blocks.ok ? json(blocks.slope) : json(nullptr)},
            {"theta", mpq_str(theta)},
            {"burgess_target", mpq_str(target)},
            {"burgess_target_value", target.get_d()}};
  return j;
}

}  // namespace gl2lab::suite
