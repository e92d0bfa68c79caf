#pragma once

// Batch suites behind the command-line tool: the exact identity suite, the
// oracle comparison sweep, coset and bound checks, golden files, and the
// serialized forms of scan and Mellin output. Every document carries a
// "schema" field.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gl2lab/lfunc.hpp"
#include "gl2lab/locgl2.hpp"
#include "gl2lab/mellin.hpp"
#include "gl2lab/oracle.hpp"

namespace gl2lab::suite {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
// "gl2lab.<kind>/<version>"
std::string schema(const std::string& kind);

// ---- exact identities ----

struct VerifyConfig {
  int nmax = 6;  // depth of the n-indexed families, 0..6
  int lmax = 6;  // depth of the l-indexed families, 0..6
  std::string golden_dir;  // empty: golden files are not consulted
};

struct IdentityCheck {
  std::string family;
  std::string id;
  bool pass = false;
  std::string residue;  // "0", or the nonzero remainder / failure message
};

struct VerifyReport {
  VerifyConfig config;
  std::vector<IdentityCheck> checks;
  [[nodiscard]] bool pass() const;
  [[nodiscard]] std::size_t failures() const;
};

VerifyReport run_verify(const VerifyConfig& cfg);
json to_json(const VerifyReport& r);

// ---- oracle sweep ----

struct OracleConfig {
  int points = 20;
  double tol = 1e-9;
  std::uint64_t seed = 20261016;
  std::vector<std::int64_t> qs{2, 3, 5, 7, 11};
};

struct OracleReport {
  OracleConfig config;
  std::vector<oracle::Comparison> records;
  double worst_rel_error = 0.0;
  std::string worst_formula;
  [[nodiscard]] bool pass() const;
};

// Seeded points with Re s in [1.5, 3], |Im| <= 3 and |Re s0|, |Re s1|, |Re s2| <= 1/4.
std::vector<oracle::EvalPoint> oracle_points(const OracleConfig& cfg);
OracleReport run_oracle(const OracleConfig& cfg);
json to_json(const OracleReport& r);

// ---- coset enumeration ----

struct CosetCheck {
  std::int64_t q = 0;
  int m = 0;
  std::vector<mpq_class> enumerated;
  std::vector<mpq_class> symbolic;
  bool pass = false;
};
std::vector<CosetCheck> run_cosets();
json to_json(std::span<const CosetCheck> checks);

// ---- bound shape checks ----

struct BoundsConfig {
  double constant = 10.0;
  double epsilon = 0.1;
};
// The four sample families, in bound-kind order.
std::vector<local::BoundSample> bound_samples(local::BoundKind kind, const BoundsConfig& cfg);
std::vector<local::BoundReport> run_bounds(const BoundsConfig& cfg);
json to_json(std::span<const local::BoundReport> reports);

// ---- Mellin ----

struct DecayMeasurement {
  double sigma = 2.0;
  double constant = 0.0;      // max |M h0(sigma+it)| t^4 over t in [5, 50]
  double worst_beyond = 0.0;  // the same maximum over t in [50, 400]
};
DecayMeasurement mellin_decay();

// ---- golden files ----

// File name -> document, generated from the current implementation.
std::map<std::string, json> golden_documents();
void write_golden(const std::string& dir);

// ---- scan output ----

std::string scan_csv(std::span<const lfunc::ScanRecord> records, bool with_header = true);
json scan_summary(std::span<const lfunc::ScanRecord> records, std::int64_t q_min, std::int64_t q_max,
                  const mpq_class& theta);

// Shortest round-trip decimal for a double.
std::string fmt(double x);

}  // namespace gl2lab::suite
