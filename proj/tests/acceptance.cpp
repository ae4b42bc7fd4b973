// One pass/fail line per acceptance criterion; exit status 1 when any fails.
// Caches are cleared before each criterion so every timing is cold.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bcalc/checks.hpp"
#include "bcalc/numeric.hpp"
#include "bcalc/properties.hpp"
#include "bcalc/spacetime.hpp"

#ifndef BCALC_FIXTURES
#define BCALC_FIXTURES "fixtures"
#endif

using namespace bcalc;

namespace {

struct Outcome {
  int passed = 0, total = 0;
  std::vector<std::string> failed;
  std::string detail;
};

std::string fixtures = BCALC_FIXTURES;

Outcome symbolic(int criterion) {
  SymbolicConfig cfg;
  cfg.formulas = fixtures + "/formulas.json";
  cfg.criterion = criterion;
  Outcome o;
  for (const auto& r : run_symbolic(cfg)) {
    ++o.total;
    if (r.pass)
      ++o.passed;
    else
      o.failed.push_back(r.id + " d=" + std::to_string(r.d));
  }
  return o;
}

Outcome numeric() {
  NumericConfig cfg;
  cfg.fixtures_dir = fixtures + "/metrics";
  Outcome o;
  for (const char* s : {"flat-zeros", "einstein-obstruction", "bach-covariance", "ym-einstein"}) {
    NumericReport rep = run_suite(s, cfg);
    double worst = 0;
    for (const auto& c : rep.checks) {
      ++o.total;
      if (c.pass)
        ++o.passed;
      else
        o.failed.push_back(std::string(s) + " " + c.id + " [" + c.fixture + "]");
      worst = std::max(worst, c.max_residual / c.tolerance);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s%s worst %.1e of tol", o.detail.empty() ? "" : ", ", s, worst);
    o.detail += buf;
  }
  return o;
}

Outcome properties() {
  Outcome o;
  for (const auto& r : run_properties(20261016, 1000)) {
    ++o.total;
    if (r.pass())
      ++o.passed;
    else
      o.failed.push_back(r.name + " (" + r.first_failure + ")");
    o.detail += (o.detail.empty() ? "" : ", ") + r.name + " " + std::to_string(r.cases);
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) fixtures = argv[1];
  struct Criterion {
    int n;
    const char* what;
    double limit;  // seconds, 0 for none
    std::function<Outcome()> run;
  };
  std::vector<Criterion> cs{
      {1, "d=4 obstruction, conservation and Gamma T", 1, [] { return symbolic(1); }},
      {2, "d=6 obstruction and Gamma T", 10, [] { return symbolic(2); }},
      {3, "odd d: vanishing obstruction and tables", 0, [] { return symbolic(3); }},
      {4, "d=4,6: trace, divergence and Gamma of the obstruction", 60, [] { return symbolic(4); }},
      {5, "scalar GJMS family", 0, [] { return symbolic(5); }},
      {6, "Yang-Mills obstruction d=4,6,8", 300, [] { return symbolic(6); }},
      {7, "numeric verification", 120, numeric},
      {8, "infrastructure properties", 0, properties},
  };
  bool all = true;
  for (const auto& c : cs) {
    clear_caches();
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    std::string error;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = c.limit == 0 || sec < c.limit;
    bool ok = error.empty() && o.total > 0 && o.failed.empty() && in_time;
    all &= ok;
    std::printf("criterion %d %s: %s, %d/%d checks, %.2f s", c.n, ok ? "PASS" : "FAIL", c.what, o.passed, o.total, sec);
    if (c.limit > 0) std::printf(" (limit %.0f s%s)", c.limit, in_time ? "" : ", exceeded");
    if (!o.detail.empty()) std::printf("; %s", o.detail.c_str());
    if (!error.empty()) std::printf("; error: %s", error.c_str());
    if (!o.failed.empty()) {
      std::printf("; failed:");
      for (const auto& f : o.failed) std::printf(" %s;", f.c_str());
    }
    std::printf("\n");
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
