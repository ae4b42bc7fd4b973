#include <doctest.h>

#include "bcalc/calculus.hpp"
#include "bcalc/canon.hpp"
#include "bcalc/reduce.hpp"
#include "bcalc/spacetime.hpp"
#include "bcalc/text.hpp"

using namespace bcalc;

namespace {

Expr P(const std::string& s, const std::string& free, int d) {
  ParseEnv e;
  e.free_names = letters(free);
  return canonical(parse_expr(s, e), d);
}

}  // namespace

TEST_SUITE("calculus") {
  TEST_CASE("binomial tables") {
    CHECK(binom(6, 2) == 15);
    CHECK(binom(4, 0) == 1);
    CHECK(dcoef(1, 4) == 4 * 2);
    CHECK(dcoef(0, 3) == 2);
  }
  TEST_CASE("leading orders of the towers") {
    Calculus& c = calculus_for(Output::Obstruction, 4);
    CHECK(equal_exact(c.T(0), {}, 4));
    CHECK(equal_exact(c.T(2), P("T_AB", "AB", 4), 4));
    CHECK(equal_exact(c.Jg(1), P("-L C_CAB", "ABC", 4), 4));
  }
  TEST_CASE("d=4 obstruction is Lambda n^A C_BAC") {
    CHECK(equal_exact(canonical(boundary_form(Output::Obstruction, 4), 4), P("-L n^A C_CAB", "BC", 4), 4));
  }
  TEST_CASE("d=4 Gamma T") {
    CHECK(equal_exact(calculus_for(Output::Obstruction, 4).gammaT(), P("-2 L^2 (C_CAB + C_BAC)", "ABC", 4), 4));
  }
  TEST_CASE("odd orders vanish in odd dimension") {
    for (int d : {5, 7}) {
      Calculus& c = calculus_for(Output::Obstruction, d);
      for (int i = 1; i <= d - 3; i += 2) {
        CAPTURE(d);
        CAPTURE(i);
        CHECK(c.T(i).empty());
        CHECK(c.Dop(i).zero());
      }
      CHECK(canonical(boundary_form(Output::Obstruction, d), d).empty());
    }
  }
  TEST_CASE("the gauge obstruction vanishes in odd dimension") {
    for (int d : {5, 7}) CHECK(canonical(boundary_form(Output::YMEquation, d), d).empty());
  }
  TEST_CASE("scalar orders one and two") {
    for (int d = 4; d <= 8; ++d) {
      CAPTURE(d);
      Calculus& c1 = scalar_calculus(d, Rat(2 - d, 2));
      CHECK(equal_mod_bianchi(c1.gjms(), P("n_A n^A phi", "", d), Theory::Boundary, d, &c1.tables()) == Verdict::Equal);
    }
  }
  TEST_CASE("Bianchi reduction decides a cyclic identity") {
    Expr e = P("W_ABCD + W_ACDB + W_ADBC", "ABCD", 4);
    CHECK(e.empty() == false);
    CHECK(zero_mod_bianchi(e, Theory::Boundary, 4) == Verdict::Equal);
    CHECK(zero_mod_bianchi(P("W_ABCD", "ABCD", 4), Theory::Boundary, 4) == Verdict::NotEqual);
  }
  TEST_CASE("caches rebuild after clearing") {
    Expr before = boundary_form(Output::Obstruction, 6);
    clear_caches();
    CHECK(equal_exact(boundary_form(Output::Obstruction, 6), before, 6));
  }
}
