#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "bcalc/formula.hpp"
#include "bcalc/jet.hpp"
#include "bcalc/numeric.hpp"

#ifndef BCALC_FIXTURES
#define BCALC_FIXTURES "fixtures"
#endif

using namespace bcalc;

namespace {

// coefficient of x^a y^b in a two-variable jet
double coef(const Jet& j, int a, int b) {
  const auto& s = *j.space();
  for (int m = 0; m < (int)j.coeffs().size(); ++m)
    if (s.exponents(m)[0] == a && s.exponents(m)[1] == b) return j.coeffs()[m];
  return 0;
}

}  // namespace

TEST_SUITE("jets") {
  TEST_CASE("products and quotients match Taylor coefficients") {
    auto s = std::make_shared<JetSpace>(2, 4);
    Jet x = Jet::variable(s, 0, 0.3), y = Jet::variable(s, 1, -0.2);
    Jet f = exp(x) * sin(y);
    // d^2/dx dy of e^x sin y is e^x cos y
    CHECK(coef(f, 1, 1) == doctest::Approx(std::exp(0.3) * std::cos(-0.2)).epsilon(1e-14));
    Jet q = (x * x + 1.0 * y) / (Jet(s, 2.0) + x);
    Jet back = q * (Jet(s, 2.0) + x);
    Jet want = x * x + 1.0 * y;
    for (size_t m = 0; m < want.coeffs().size(); ++m) CHECK(back.coeffs()[m] == doctest::Approx(want.coeffs()[m]).epsilon(1e-13));
  }
  TEST_CASE("derivative lowers the order") {
    auto s = std::make_shared<JetSpace>(2, 3);
    Jet x = Jet::variable(s, 0, 1.0);
    Jet c = pow(x, 3.0);
    Jet d = c.d(0);
    CHECK(d.ord() == c.ord() - 1);
    CHECK(d.value() == doctest::Approx(3.0));
    // 3 x^2 around x = 1 is 3 + 6 (x - 1) + ...
    CHECK(coef(d, 1, 0) == doctest::Approx(6.0));
  }
  TEST_CASE("random jets: inverse times value is one") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1, 1);
    auto s = std::make_shared<JetSpace>(3, 3);
    for (int k = 0; k < 200; ++k) {
      Jet a(s, 2.0 + u(rng));
      for (int i = 0; i < 3; ++i) a += u(rng) * Jet::variable(s, i, u(rng));
      Jet one = a * inverse(a);
      CHECK(one.value() == doctest::Approx(1.0));
      for (size_t m = 1; m < one.coeffs().size(); ++m) CHECK(std::abs(one.coeffs()[m]) < 1e-12);
    }
  }
  TEST_CASE("fixture formulas evaluate") {
    Formula f("x^2*sin(y) + 3/(1+x)", {"x", "y"});
    double v = f.eval(std::vector<double>{0.5, 0.25}, [](double k) { return k; });
    CHECK(v == doctest::Approx(0.25 * std::sin(0.25) + 2.0));
    CHECK_THROWS_AS(Formula("x +", {"x"}), FormulaError);
    CHECK_THROWS_AS(Formula("z", {"x"}), FormulaError);
  }
}

TEST_SUITE("numeric suites") {
  TEST_CASE("lambda scaling and the finite difference oracle") {
    NumericConfig cfg;
    cfg.fixtures_dir = std::string(BCALC_FIXTURES) + "/metrics";
    for (const char* s : {"lambda-scaling", "fd-oracle", "gjms-flat", "trace-free", "div-free", "odd-d-conservation"}) {
      NumericReport r = run_suite(s, cfg);
      CAPTURE(s);
      CHECK(!r.checks.empty());
      for (const auto& c : r.checks) {
        CAPTURE(c.id);
        CAPTURE(c.fixture);
        CAPTURE(c.max_residual);
        CHECK(c.pass);
      }
    }
  }
  TEST_CASE("unknown suites and missing fixtures") {
    NumericConfig cfg;
    CHECK_THROWS_AS(run_suite("nosuch", cfg), UsageError);
    cfg.fixtures_dir = "/nonexistent";
    CHECK_THROWS(run_suite("flat-zeros", cfg));
  }
}
