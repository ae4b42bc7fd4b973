#pragma once

#include <string>

#include "bcalc/expr.hpp"

namespace bcalc {

// Folds metrics and deltas, kills traceless contractions, then picks the
// lexicographically minimal encoding over factor orderings and slot symmetries.
// Returns false when the term vanishes. d is the range of the indices.
bool canonicalize_term(Term& t, int d);

// Canonicalizes every term, merges equal monomials and drops zeros.
Expr canonical(const Expr& e, int d);

// Monomial key of a canonical term (coefficient excluded, lambda power included).
std::string term_key(const Term& t);

bool is_zero(const Expr& e, int d);
bool equal_exact(const Expr& a, const Expr& b, int d);

}  // namespace bcalc
