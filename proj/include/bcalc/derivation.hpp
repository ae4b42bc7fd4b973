#pragma once

#include <random>
#include <string>

#include "bcalc/expr.hpp"
#include "bcalc/ops.hpp"

namespace bcalc {

// A generator of the boundary derivation algebra: nabla_a, Gamma_a,
// Delta^P_Q (P up, Q lower) or the weight operator.
struct Deriv {
  enum Kind { Nabla, Gamma, GL, Weight } kind = Nabla;
  Idx a{}, b{};
};

std::string deriv_name(const Deriv& X);
Expr apply(const Deriv& X, const Expr& e, const GammaTables& tab);

// [X, Y] e from the closed commutation relations, not by composition.
Expr commutator(const Deriv& X, const Deriv& Y, const Expr& e, const GammaTables& tab);

// Weight shift of X under the counting of weight_of: X e has weight
// weight(e) + shift(X).
int weight_shift(const Deriv& X);

// [[X,Y],Z] e + [[Y,Z],X] e + [[Z,X],Y] e with the inner brackets closed.
Expr jacobiator(const Deriv& X, const Deriv& Y, const Deriv& Z, const Expr& e, const GammaTables& tab);

// Random generator whose indices are the free ids in ids (consumed in order).
Deriv random_deriv(std::mt19937_64& rng, int id0, int id1);

// Boundary tables carrying Gamma on T, J and psi, taken from the gravity,
// gauge and scalar calculi of dimension d (scalar weight w).
GammaTables full_tables(int d, const Rat& w);

}  // namespace bcalc
