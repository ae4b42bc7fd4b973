#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "bcalc/expr.hpp"

namespace bcalc {

// Named abbreviation usable in formula text, e.g. B_AB -> n^C C_ABC.
struct Macro {
  int nidx = 0;
  Expr body;  // free ids 0..nidx-1, all lower
};

struct ParseEnv {
  Theory theory = Theory::Boundary;
  std::vector<std::string> free_names;  // names mapped to ids 0, 1, ...
  std::map<std::string, Macro> macros;
};

// Grammar (whitespace separated, juxtaposition multiplies):
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*'? factor | '/' number)*
//   factor := number ['/' number] | 'L' ['^' int] | '(' expr ')' | '[' expr ',' expr ']'
//           | 'n' idx+ factor | name idx*
//   idx    := ('_'|'^') (letter digit* )+  or  ('_'|'^') '{' names '}'
// 'n' is the covariant derivative, 'L' the constant Lambda, 'g' the metric and
// 'd' the delta. Lie-valued factors multiply as an ordered word.
Expr parse_expr(const std::string& text, const ParseEnv& env);

// Single-line normal form accepted back by parse_expr.
std::string to_text(const Expr& e, const std::vector<std::string>& free_names);
std::string to_latex(const Expr& e, const std::vector<std::string>& free_names);
nlohmann::json to_json(const Expr& e, const std::vector<std::string>& free_names, const Ctx* ctx = nullptr);
Expr from_json(const nlohmann::json& j, const ParseEnv& env);

std::vector<std::string> letters(const std::string& s);

}  // namespace bcalc
