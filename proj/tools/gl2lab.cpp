#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gl2lab/errors.hpp"
#include "gl2lab/lfunc.hpp"
#include "gl2lab/mellin.hpp"
#include "gl2lab/suite.hpp"

namespace {

using gl2lab::suite::json;
using cplx = std::complex<double>;

struct RunConfig {
  int nmax = 6;
  int lmax = 6;
  double tol = 1e-9;
  std::int64_t qmin = 100;
  std::int64_t qmax = 3000;
  std::int64_t stride = 1;
  std::string theta = "7/64";
  std::uint64_t seed = 20261016;
  std::string out;

  // verify
  std::string golden = GL2LAB_DEFAULT_GOLDEN_DIR;
  std::string write_golden;
  // oracle
  int points = 20;
  std::vector<std::int64_t> qs{2, 3, 5, 7, 11};
  // lvalue
  std::int64_t q = 4;
  std::string label;
  double lv_tol = 1e-10;
  double balance = 1.0;
  // scan
  std::string summary;
  bool timing = false;
  // mellin
  std::string s = "1,0";
  int order = -1;
  std::string re_grid;
  std::string im_grid;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw gl2lab::Error("cannot write " + path);
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

mpq_class parse_theta(const std::string& text) {
  if (text.find_first_of(".eE") != std::string::npos) return mpq_class(std::stod(text));
  mpq_class v(text, 10);
  v.canonicalize();
  return v;
}

std::vector<double> split_numbers(const std::string& text, char sep) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(std::stod(item));
  return out;
}

cplx parse_complex(const std::string& text) {
  const auto v = split_numbers(text, ',');
  if (v.empty() || v.size() > 2) throw gl2lab::DomainError("expected re[,im], got '" + text + "'");
  return {v[0], v.size() == 2 ? v[1] : 0.0};
}

// "a:b:n" -> n points from a to b inclusive.
std::vector<double> parse_range(const std::string& text) {
  const auto v = split_numbers(text, ':');
  if (v.size() == 1) return {v[0]};
  if (v.size() != 3 || v[2] < 1) throw gl2lab::DomainError("expected a:b:n, got '" + text + "'");
  const int n = static_cast<int>(v[2]);
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(n == 1 ? v[0] : v[0] + (v[1] - v[0]) * i / (n - 1));
  return out;
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

int cmd_verify(const RunConfig& c) {
  if (!c.write_golden.empty()) {
    gl2lab::suite::write_golden(c.write_golden);
    std::cerr << "golden files written to " << c.write_golden << "\n";
    return 0;
  }
  gl2lab::suite::VerifyConfig cfg;
  cfg.nmax = c.nmax;
  cfg.lmax = c.lmax;
  if (!c.golden.empty() && std::filesystem::exists(c.golden)) cfg.golden_dir = c.golden;
  const auto rep = gl2lab::suite::run_verify(cfg);
  emit(dump(gl2lab::suite::to_json(rep)), c.out);
  std::cerr << "verify: " << rep.checks.size() << " identities, " << rep.failures() << " failed\n";
  for (const auto& chk : rep.checks) {
    if (!chk.pass) std::cerr << "  FAILED " << chk.id << ": " << chk.residue << "\n";
  }
  return rep.pass() ? 0 : 1;
}

int cmd_oracle(const RunConfig& c) {
  gl2lab::suite::OracleConfig cfg;
  cfg.points = c.points;
  cfg.tol = c.tol;
  cfg.seed = c.seed;
  cfg.qs = c.qs;
  const auto rep = gl2lab::suite::run_oracle(cfg);
  emit(dump(gl2lab::suite::to_json(rep)), c.out);
  std::size_t failed = 0;
  for (const auto& r : rep.records) failed += r.pass ? 0 : 1;
  std::cerr << "oracle: " << rep.records.size() << " comparisons, " << failed << " above tol " << c.tol
            << ", worst " << rep.worst_rel_error << " (" << rep.worst_formula << ")\n";
  return rep.pass() ? 0 : 1;
}

int cmd_lvalue(const RunConfig& c) {
  const auto chars = gl2lab::lfunc::enumerate_characters(c.q);
  if (chars.empty()) throw gl2lab::DomainError("no primitive characters mod " + std::to_string(c.q));
  const gl2lab::lfunc::DirichletCharacter* chi = &chars.front();
  if (!c.label.empty()) {
    chi = nullptr;
    for (const auto& x : chars) {
      if (x.label == c.label) chi = &x;
    }
    if (chi == nullptr) throw gl2lab::DomainError("no primitive character labelled " + c.label);
  }
  const auto L = gl2lab::lfunc::l_central(*chi, c.lv_tol, c.balance);
  json j = {{"schema", gl2lab::suite::schema("lvalue")},
            {"q", chi->q},
            {"label", chi->label},
            {"parity", chi->parity},
            {"value", cjson(L.value)},
            {"abs", std::abs(L.value)},
            {"error_bound", L.error_bound},
            {"terms", L.terms}};
  if (chi->q <= 10000) {
    const cplx ref = gl2lab::lfunc::l_oracle_hurwitz(*chi, 0.5);
    j["oracle"] = cjson(ref);
    j["oracle_diff"] = std::abs(ref - L.value);
  }
  emit(dump(j), c.out);
  return 0;
}

int cmd_scan(const RunConfig& c) {
  const mpq_class theta = parse_theta(c.theta);
  const auto records = gl2lab::lfunc::scan(c.qmin, c.qmax, c.stride, c.timing);
  emit(gl2lab::suite::scan_csv(records), c.out);
  const std::string summary = dump(gl2lab::suite::scan_summary(records, c.qmin, c.qmax, theta));
  if (c.summary.empty()) {
    std::cerr << summary;
  } else {
    emit(summary, c.summary);
  }
  return 0;
}

int cmd_mellin(const RunConfig& c) {
  auto value = [&c](cplx s) {
    return c.order < 0 ? gl2lab::mellin::mellin_h0(s) : gl2lab::mellin::mellin_h0(s, c.order);
  };
  if (c.re_grid.empty() && c.im_grid.empty()) {
    const cplx s = parse_complex(c.s);
    json j = {{"schema", gl2lab::suite::schema("mellin")},
              {"s", cjson(s)},
              {"order", c.order < 0 ? json("auto") : json(c.order)},
              {"value", cjson(value(s))}};
    emit(dump(j), c.out);
    return 0;
  }
  const auto res = parse_range(c.re_grid.empty() ? "1" : c.re_grid);
  const auto ims = parse_range(c.im_grid.empty() ? "0" : c.im_grid);
  std::ostringstream os;
  os << "re_s,im_s,re,im\n";
  for (double re : res) {
    for (double im : ims) {
      const cplx v = value({re, im});
      os << gl2lab::suite::fmt(re) << ',' << gl2lab::suite::fmt(im) << ',' << gl2lab::suite::fmt(v.real()) << ','
         << gl2lab::suite::fmt(v.imag()) << '\n';
    }
  }
  emit(os.str(), c.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gl2lab: local GL(2) formulas, oracles and central L-values"};
  app.require_subcommand(1);
  RunConfig c;

  auto* verify = app.add_subcommand("verify", "exact identity suite");
  verify->add_option("--nmax", c.nmax, "depth of n-indexed families (0..6)")->capture_default_str();
  verify->add_option("--lmax", c.lmax, "depth of l-indexed families (0..6)")->capture_default_str();
  verify->add_option("--golden", c.golden, "golden directory, empty to skip")->capture_default_str();
  verify->add_option("--write-golden", c.write_golden, "regenerate golden files into this directory and exit");
  verify->add_option("--out", c.out, "JSON report path (default stdout)");

  auto* orc = app.add_subcommand("oracle", "closed forms against brute-force summation");
  orc->add_option("--tol", c.tol, "relative tolerance")->capture_default_str();
  orc->add_option("--seed", c.seed, "seed for the evaluation points")->capture_default_str();
  orc->add_option("--points", c.points, "points per formula")->capture_default_str();
  orc->add_option("--q", c.qs, "residue field sizes (primes)")->capture_default_str();
  orc->add_option("--out", c.out, "JSON report path (default stdout)");

  auto* lv = app.add_subcommand("lvalue", "L(1/2, chi) for one primitive character");
  lv->add_option("--q", c.q, "modulus")->capture_default_str();
  lv->add_option("--label", c.label, "character label q:k1.k2...; default the first one");
  lv->add_option("--tol", c.lv_tol, "absolute error target")->capture_default_str();
  lv->add_option("--balance", c.balance, "cut point of the first sum, in units of sqrt(q)")->capture_default_str();
  lv->add_option("--out", c.out, "JSON output path (default stdout)");

  auto* sc = app.add_subcommand("scan", "max |L(1/2, chi)| over primitive chi, per modulus");
  sc->add_option("--qmin", c.qmin, "first modulus")->capture_default_str();
  sc->add_option("--qmax", c.qmax, "last modulus")->capture_default_str();
  sc->add_option("--stride", c.stride, "modulus step")->capture_default_str();
  sc->add_option("--theta", c.theta, "Ramanujan exponent, rational a/b or decimal")->capture_default_str();
  sc->add_flag("--timing", c.timing, "fill the seconds column (output is then not reproducible)");
  sc->add_option("--out", c.out, "CSV path (default stdout)");
  sc->add_option("--summary", c.summary, "JSON summary path (default stderr)");

  auto* me = app.add_subcommand("mellin", "Mellin transform of the smooth cutoff");
  me->add_option("--s", c.s, "point re,im")->capture_default_str();
  me->add_option("--order", c.order, "integration-by-parts order 0..4; default auto");
  me->add_option("--re", c.re_grid, "grid a:b:n over Re s (CSV mode)");
  me->add_option("--im", c.im_grid, "grid a:b:n over Im s (CSV mode)");
  me->add_option("--out", c.out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (verify->parsed()) return cmd_verify(c);
    if (orc->parsed()) return cmd_oracle(c);
    if (lv->parsed()) return cmd_lvalue(c);
    if (sc->parsed()) return cmd_scan(c);
    if (me->parsed()) return cmd_mellin(c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
