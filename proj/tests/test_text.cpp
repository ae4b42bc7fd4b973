#include <doctest.h>

#include <stdexcept>

#include "bcalc/canon.hpp"
#include "bcalc/ops.hpp"
#include "bcalc/text.hpp"

using namespace bcalc;

namespace {

ParseEnv env(const std::string& free, Theory th = Theory::Boundary) {
  ParseEnv e;
  e.theory = th;
  e.free_names = letters(free);
  return e;
}

Expr P(const std::string& s, const std::string& free = "AB") { return canonical(parse_expr(s, env(free)), 4); }

}  // namespace

TEST_SUITE("text") {
  TEST_CASE("symmetries are applied on parse") {
    CHECK(P("T_AB - T_BA").empty());
    CHECK(P("F_AB + F_BA").empty());
    CHECK(P("C_ABC + C_ACB", "ABC").empty());
    CHECK(P("W_ACBD + W_CABD", "ABCD").empty());
  }
  TEST_CASE("traces and deltas") {
    CHECK(P("W^C_ACB").empty());
    CHECK(P("C^A_AB", "B").empty());
    CHECK(equal_exact(P("d^C_C phi", ""), P("4 phi", ""), 4));
    CHECK(equal_exact(P("g_AC g^CD T_DB"), P("T_AB"), 4));
  }
  TEST_CASE("Lambda powers and rationals") {
    Expr e = parse_expr("3/8 L^2 phi", env(""));
    REQUIRE(e.size() == 1);
    CHECK(e[0].lam == 2);
    CHECK(e[0].c == Rat(3, 8));
  }
  TEST_CASE("Lie words keep their order") {
    Expr e = P("[F_AC, F^C_B]");
    CHECK(!e.empty());
    CHECK(equal_exact(P("[F_AC, F^C_B]"), P("F_AC F^C_B - F^C_B F_AC"), 4));
  }
  TEST_CASE("macros expand") {
    ParseEnv e = env("AB");
    e.macros["B"] = {2, parse_expr("n^C C_ABC", e)};
    CHECK(equal_exact(canonical(parse_expr("B_AB", e), 4), P("n^C C_ABC"), 4));
  }
  TEST_CASE("text output parses back") {
    Expr e = P("3 L n_A n_B phi - 1/2 T_AB + W_ACBD T^CD");
    CHECK(equal_exact(P(to_text(e, letters("AB"))), e, 4));
  }
  TEST_CASE("malformed input throws") {
    CHECK_THROWS_AS(parse_expr("T_AB +", env("AB")), std::invalid_argument);
    CHECK_THROWS_AS(parse_expr("Q_AB", env("AB")), std::invalid_argument);
    CHECK_THROWS_AS(parse_expr("(T_AB", env("AB")), std::invalid_argument);
    CHECK_THROWS_AS(parse_expr("T_AB + - T_AB", env("AB")), std::invalid_argument);
    CHECK_THROWS(parse_expr("T_ABC", env("ABC")));
  }
  TEST_CASE("unknown JSON symbol throws") {
    nlohmann::json j = to_json(P("T_AB"), letters("AB"));
    std::string s = j.dump();
    auto at = s.find("\"TT\"");
    if (at == std::string::npos) at = s.find("\"T\"");
    REQUIRE(at != std::string::npos);
    s.replace(at, s.find('"', at + 1) - at + 1, "\"nosuch\"");
    CHECK_THROWS(from_json(nlohmann::json::parse(s), env("AB")));
  }
}
