#pragma once

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace vir {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Everything a suite run depends on; embedded verbatim in every report.
struct RunConfig {
  std::string suite = "symbolic";  // symbolic | numeric | mc | all
  std::uint64_t seed = 7;
  double tol_scale = 1.0;          // multiplies every numeric tolerance
  std::string out;                 // report path; empty for stdout
  // symbolic truncation
  int spectators = 3, jet_order = 10, hydro_depth = 10;
  // Monte Carlo sample counts
  long restriction_samples = 100000;
  long martingale_samples = 100000;
  long scaling_samples = 10000;
  long agreement_samples = 1000;
  long one_shot_samples = 100000;
  long disintegration_samples = 2000;
  // property-test instance counts
  long tube_pairs = 100;
  long multi_trace_sets = 10;
  // Checks run concurrently when true (report order is fixed either way).
  bool parallel = true;

  // key = value, one per line; '#' starts a comment.
  void set(const std::string& key, const std::string& value);
  static RunConfig parse(std::istream& in);
  static RunConfig load(const std::string& path);
  nlohmann::json to_json() const;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0, target = 0, tolerance = 0;
  std::string comparison;  // how measured is compared to target: "exact", "abs", "sigma", "below", "above"
  std::string detail;
};

struct SuiteReport {
  RunConfig config;
  std::vector<CheckResult> checks;
  bool passed() const;
  std::vector<std::string> failures() const;
  nlohmann::json to_json() const;
};

// A named group of checks belonging to one suite; `criterion` ties it to the
// acceptance list (0 = none).
struct CheckSpec {
  std::string name, suite;
  int criterion = 0;
  std::function<std::vector<CheckResult>(const RunConfig&)> run;
};
const std::vector<CheckSpec>& all_checks();

// Runs every check of cfg.suite ("all" runs the three suites); exceptions
// inside a check propagate, so the caller can map them to exit code 2.
SuiteReport run_suite(const RunConfig& cfg);
int exit_code(const SuiteReport& report);  // 0 pass, 1 fail

// Commutation relations [L_m, L_n] for |m|, |n| <= n_range, compared exactly on
// the valid jet order of the commutator.
struct RelationRow {
  int m = 0, n = 0;
  bool ok = false;
};
std::vector<RelationRow> halfplane_relation_table(int spectators, int jet_order, int n_range, bool virasoro);
std::vector<RelationRow> bb_relation_table(int points, int depth, int n_range, bool virasoro);

// Tables.
// Kernel table on the annulus of modulus t at boundary points x (and their
// interior lifts x + i y_frac t/2): columns documented in the README.
void write_annulus_table(std::ostream& out, double t, const std::vector<double>& points, double y_frac = 0.25);
// Canonical text form of l_n (or L_n) in the half-plane chart with N spectators and jet order k.
std::string dump_operator(int n, int jet_order, int spectators, bool virasoro);
// Canonical text form of the Bauer-Bernard l_n with n points and depth K.
std::string dump_bb_operator(int n, int depth, int points, bool virasoro);

}  // namespace vir
