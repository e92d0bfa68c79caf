// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--only 1,5] [--expect-red 4,7]
//
// Exit status is 0 when every criterion that ran came out as expected, i.e. it
// passed, or it failed and was listed with --expect-red. A listed criterion
// that passes is reported as unexpected.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "gl2lab/lfunc.hpp"
#include "gl2lab/mellin.hpp"
#include "gl2lab/suite.hpp"

using namespace gl2lab;
using cplx = std::complex<double>;

namespace {

constexpr std::uint64_t kSeed = 20261016;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Outcome identities() {
  const auto rep = suite::run_verify({.golden_dir = GL2LAB_GOLDEN_DIR});
  return {rep.pass(), std::to_string(rep.checks.size()) + " identities, " + std::to_string(rep.failures()) +
                          " nonzero"};
}

Outcome oracle_equivalence() {
  const auto rep = suite::run_oracle({});
  return {rep.pass(), std::to_string(rep.records.size()) + " comparisons, worst rel " + num(rep.worst_rel_error) +
                          " (" + rep.worst_formula + ")"};
}

Outcome cosets() {
  const auto checks = suite::run_cosets();
  int bad = 0;
  for (const auto& c : checks) bad += c.pass ? 0 : 1;
  return {bad == 0 && checks.size() == 6, std::to_string(checks.size()) + " (q,m) cases, " + std::to_string(bad) +
                                               " mismatched"};
}

Outcome bounds() {
  const auto reports = suite::run_bounds({});
  bool all = true;
  std::string d;
  for (const auto& r : reports) {
    all = all && r.pass;
    d += (d.empty() ? "" : ", ") + local::bound_kind_name(r.kind) + " " + num(r.worst_ratio);
  }
  return {all, "worst ratios at constant 10: " + d};
}

Outcome mellin_checks() {
  std::mt19937_64 rng(kSeed);
  auto uniform = [&rng](double lo, double hi) { return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53); };
  double n_indep = 0.0, complement = 0.0;
  for (int i = 0; i < 100; ++i) {
    const cplx s(uniform(0.05, 5.0), uniform(-20.0, 20.0));
    const cplx ref = mellin::mellin_h0(s, 0);
    for (int N = 1; N <= mellin::kMaxOrder; ++N) n_indep = std::max(n_indep, std::abs(mellin::mellin_h0(s, N) - ref));
  }
  for (int i = 0; i < 100; ++i) {
    const cplx s(uniform(-2.95, -0.05), uniform(-15.0, 15.0));
    complement = std::max(complement,
                          std::abs(mellin::mellin_one_minus_h0(s) - mellin::mellin_one_minus_h0_quadrature(s)));
  }
  const cplx eps(1e-3, 0.0);
  const double residue = std::abs(eps * mellin::mellin_h0(eps) - 1.0);
  return {n_indep < 1e-8 && complement < 1e-8 && residue <= 1e-2,
          "order spread " + num(n_indep) + ", complement " + num(complement) + ", residue offset " + num(residue)};
}

Outcome l_values() {
  double worst = 0.0;
  std::size_t count = 0;
  auto compare = [&](const lfunc::DirichletCharacter& chi) {
    const auto L = lfunc::l_central(chi);
    worst = std::max(worst, std::abs(L.value - lfunc::l_oracle_hurwitz(chi, 0.5)));
    ++count;
  };
  for (std::int64_t q = 3; q <= 200; ++q) lfunc::for_each_character(q, true, compare);
  const std::size_t exhaustive = count;

  std::mt19937_64 rng(kSeed);
  int random = 0;
  while (random < 100) {
    const auto q = static_cast<std::int64_t>(3 + rng() % 2998);
    const auto chars = lfunc::enumerate_characters(q);
    if (chars.empty()) continue;
    compare(chars[rng() % chars.size()]);
    ++random;
  }
  return {worst < 2e-8, std::to_string(exhaustive) + " exhaustive + " + std::to_string(random) +
                            " random, worst abs diff " + num(worst)};
}

Outcome subconvexity_trend() {
  const auto records = lfunc::scan(100, 3000, 1);
  const auto s = suite::scan_summary(records, 100, 3000, mpq_class(7, 64));
  const bool target_ok = s["burgess_target"] == "103/512";
  const bool slope_ok = s["fit_ok"].get<bool>() && s["slope"].get<double>() < 0.25;
  return {target_ok && slope_ok, std::to_string(records.size()) + " moduli, slope " +
                                     num(s["slope"].get<double>()) + ", burgess_target " +
                                     s["burgess_target"].get<std::string>()};
}

std::set<int> parse_list(const std::string& text) {
  std::set<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only, expect_red;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--only") {
      only = parse_list(argv[i + 1]);
    } else if (flag == "--expect-red") {
      expect_red = parse_list(argv[i + 1]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--only LIST] [--expect-red LIST]\n");
      return 2;
    }
  }

  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"symbolic identity suite", identities},
      {"oracle equivalence", oracle_equivalence},
      {"coset enumeration", cosets},
      {"bound shape checks", bounds},
      {"Mellin recursion", mellin_checks},
      {"L-value cross-validation", l_values},
      {"subconvexity trend", subconvexity_trend},
  };

  bool as_expected = true;
  for (int k = 1; k <= 7; ++k) {
    if (!only.empty() && !only.contains(k)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k - 1].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool red_expected = expect_red.contains(k);
    std::string note;
    if (!o.pass && red_expected) note = " [known red]";
    if (o.pass && red_expected) note = " [unexpected pass]";
    as_expected = as_expected && (o.pass != red_expected);
    std::printf("criterion %d %s: %s (%s; %.1fs)%s\n", k, o.pass ? "PASS" : "FAIL", criteria[k - 1].first,
                o.detail.c_str(), secs, note.c_str());
    std::fflush(stdout);
  }
  return as_expected ? 0 : 1;
}
