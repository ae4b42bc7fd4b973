#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bcalc/expr.hpp"
#include "bcalc/text.hpp"

namespace bcalc {

// One printed or derived formula compared against the engine output.
struct FormulaCheck {
  std::string id;
  int criterion = 0;  // acceptance criterion fed by the check, 0 for none
  int d = 4;
  std::string quantity;  // O_AB, O_A, Gamma T, Y_B, Y, Gamma J, J, P, pullback, "st " + one of these
  std::string free;      // letters naming the free ids of the quantity in order
  std::string expect;
  std::string compare;  // exact, bianchi or on-shell
  std::string origin;   // printed or derived
  std::string note;
  std::string source;  // boundary text for "pullback"
  std::string sector;  // calculus used for "pullback"
  int N = 0;           // tower order for J
  int ell = 0;         // GJMS order, or
  std::string w;       // the scalar weight
  ParseEnv env;        // resolved parse environment for expect
};

struct FormulaSet {
  std::vector<FormulaCheck> checks;
};

// Throws FixtureError naming the file and the offending entry.
FormulaSet load_formulas(const std::string& path);
FormulaSet parse_formulas(const std::string& text, const std::string& origin);

struct SymbolicResult {
  std::string id;
  int criterion = 0;
  int d = 0;
  std::string origin;   // printed, derived or identity
  std::string verdict;  // exact, equal-mod-bianchi, not-equal, undecided
  bool pass = false;
  double seconds = 0;
  std::string residual;  // text of what is left, empty on success
  std::string note;
};

struct SymbolicConfig {
  std::string formulas = "fixtures/formulas.json";
  int d = 0;          // 0: every dimension
  int criterion = -1; // -1: every check
};

// The engine value of a formula check, canonical, in the theory of the check.
Expr check_quantity(const FormulaCheck& f);
SymbolicResult run_formula_check(const FormulaCheck& f);

// Checks computed from the calculus alone:
//   vanishing-table-d5          odd-order zeros of T, D and J
//   gravity-trace-d4, gravity-div-d6, gravity-gamma-d6 ...
//   ym-div-d8, ym-gamma-d8 ...  identities of the gauge obstruction
std::vector<std::string> identity_check_ids(int d = 0);
SymbolicResult run_identity_check(const std::string& id);
int identity_criterion(const std::string& id);

// Every check matching the config, formulas first, in a fixed order.
std::vector<SymbolicResult> run_symbolic(const SymbolicConfig& cfg);
nlohmann::json to_json(const std::vector<SymbolicResult>& rs);

}  // namespace bcalc
