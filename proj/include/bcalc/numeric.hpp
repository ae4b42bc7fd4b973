#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace bcalc {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckResult {
  std::string id;        // e.g. "obstruction-trace d=6"
  std::string fixture;   // fixture name
  std::string measure;   // "relative" (by the largest term), "absolute", "difference"
  std::vector<std::vector<double>> points;
  std::vector<double> residuals;  // per point, sorted by point index
  double max_residual = 0;
  double tolerance = 0;
  bool pass = false;
  std::string note;
};

struct NumericReport {
  std::string suite;
  double lambda = -1;
  std::vector<CheckResult> checks;
  double runtime = 0;  // seconds; kept out of the JSON so reports are reproducible

  bool pass() const;
  nlohmann::json to_json() const;
};

struct NumericConfig {
  std::string fixtures_dir = "fixtures/metrics";
  double lambda = -1;
  std::optional<double> tolerance;  // replaces every default tolerance
  int d = 0;                        // 0: every dimension the suite covers
};

// Registered suites, in the order "all" runs them.
const std::vector<std::string>& suite_names();
// Throws UsageError for an unknown suite, FixtureError for missing or corrupt
// fixture files.
NumericReport run_suite(const std::string& name, const NumericConfig& cfg);
std::vector<NumericReport> run_suites(const std::string& name, const NumericConfig& cfg);

}  // namespace bcalc
