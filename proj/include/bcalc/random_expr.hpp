#pragma once

#include <random>
#include <vector>

#include "bcalc/expr.hpp"

namespace bcalc {

struct RandomExprOptions {
  Theory theory = Theory::Boundary;
  std::vector<Idx> free;  // free indices shared by every term
  int max_terms = 3;
  int max_factors = 3;
  int max_derivs = 2;
  bool lie = true;         // allow F and J (their Lie words)
  bool subleading = true;  // allow T, J and psi
  int max_lam = 3;
};

// Well-formed random expression: each term has exactly the given free
// indices and every other index is contracted once, up against down.
Expr random_expr(std::mt19937_64& rng, const RandomExprOptions& o);

}  // namespace bcalc
