#include <doctest.h>

#include "bcalc/checks.hpp"
#include "bcalc/fixture.hpp"

#ifndef BCALC_FIXTURES
#define BCALC_FIXTURES "fixtures"
#endif

using namespace bcalc;

namespace {

std::string one(const std::string& body) { return "{\"checks\": [" + body + "]}"; }

}  // namespace

TEST_SUITE("formula fixtures") {
  TEST_CASE("the shipped formulas load") {
    FormulaSet fs = load_formulas(std::string(BCALC_FIXTURES) + "/formulas.json");
    CHECK(fs.checks.size() > 40);
    for (int c : {1, 2, 3, 5, 6}) {
      int n = 0;
      for (const auto& f : fs.checks) n += f.criterion == c;
      CAPTURE(c);
      CHECK(n > 0);
    }
  }
  TEST_CASE("a passing check and a failing one") {
    auto fs = parse_formulas(one(R"({"id": "ok", "d": 4, "quantity": "O_AB", "free": "BC",
      "expect": "-L n^A C_CAB", "compare": "exact", "origin": "printed"},
      {"id": "bad", "d": 4, "quantity": "O_AB", "free": "BC",
      "expect": "2 L n^A C_CAB", "compare": "exact", "origin": "printed"})"),
                             "inline");
    REQUIRE(fs.checks.size() == 2);
    auto a = run_formula_check(fs.checks[0]);
    auto b = run_formula_check(fs.checks[1]);
    CHECK(a.pass);
    CHECK(a.verdict == "exact");
    CHECK(!b.pass);
    CHECK(!b.residual.empty());
  }
  TEST_CASE("malformed formula files are rejected") {
    CHECK_THROWS_AS(parse_formulas("{\"checks\": [", "x"), FixtureError);
    CHECK_THROWS_AS(parse_formulas(one(R"({"id": "q", "d": 4, "quantity": "nosuch", "free": "", "expect": "0", "compare": "exact"})"), "x"),
                    FixtureError);
    CHECK_THROWS_AS(parse_formulas(one(R"({"id": "c", "d": 4, "quantity": "O_AB", "free": "AB", "expect": "0", "compare": "maybe"})"), "x"),
                    FixtureError);
    CHECK_THROWS_AS(parse_formulas(one(R"({"id": "d", "d": 2, "quantity": "O_AB", "free": "AB", "expect": "0", "compare": "exact"})"), "x"),
                    FixtureError);
    CHECK_THROWS_AS(parse_formulas(one(R"({"id": "s", "d": 4, "quantity": "P", "free": "", "expect": "phi", "compare": "exact"})"), "x"),
                    FixtureError);
    CHECK_THROWS_AS(parse_formulas(one(R"({"id": "t", "d": 4, "quantity": "O_AB", "free": "AB", "expect": "T_AB +", "compare": "exact"})"), "x"),
                    FixtureError);
    CHECK_THROWS_AS(load_formulas("/nonexistent/formulas.json"), FixtureError);
  }
  TEST_CASE("the error names the entry") {
    try {
      parse_formulas(one(R"({"id": "named-entry", "d": 4, "quantity": "nosuch", "free": "", "expect": "0", "compare": "exact"})"), "file.json");
      FAIL("no throw");
    } catch (const FixtureError& e) {
      std::string m = e.what();
      CHECK(m.find("file.json") != std::string::npos);
      CHECK(m.find("named-entry") != std::string::npos);
    }
  }
  TEST_CASE("identity ids carry their dimension") {
    auto ids = identity_check_ids(6);
    CHECK(!ids.empty());
    for (const auto& id : ids) CHECK(id.substr(id.size() - 3) == "-d6");
    auto r = run_identity_check("gravity-trace-d4");
    CHECK(r.pass);
    CHECK(r.d == 4);
    CHECK(identity_criterion("vanishing-table-d5") == 3);
  }
}

TEST_SUITE("metric fixtures") {
  TEST_CASE("a minimal fixture parses") {
    Fixture fx = parse_fixture("name = t\ncoords = x y\ng 0 0 = 1\ng 1 1 = 1 + x^2\nflat = false\npoint = 0.1 0.2\n", "t");
    CHECK(fx.dim() == 2);
    CHECK(fx.points.size() == 1);
    CHECK(!fx.flag("flat"));
  }
  TEST_CASE("corrupt fixtures are rejected") {
    CHECK_THROWS_AS(parse_fixture("coords = x y\ng 0 0 1\n", "t"), FixtureError);
    CHECK_THROWS_AS(parse_fixture("coords = x y\ncoords = x y\n", "t"), FixtureError);
    CHECK_THROWS_AS(parse_fixture("coords = x y\nflat = maybe\n", "t"), FixtureError);
    CHECK_THROWS_AS(parse_fixture("coords = x y\ncolour = red\n", "t"), FixtureError);
    CHECK_THROWS_AS(parse_fixture("coords = x y\ng 0 0 = 1 +\n", "t"), FixtureError);
    CHECK_THROWS_AS(load_fixture("/nonexistent.fx"), FixtureError);
  }
  TEST_CASE("every shipped metric fixture loads") {
    for (const char* n : {"flat4", "sphere4", "s2xs2", "random6-0", "confflat6"}) {
      CAPTURE(n);
      CHECK_NOTHROW(load_fixture(std::string(BCALC_FIXTURES) + "/metrics/" + n + ".fx"));
    }
  }
}
