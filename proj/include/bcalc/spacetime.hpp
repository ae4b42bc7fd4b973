#pragma once

#include <string>

#include "bcalc/calculus.hpp"
#include "bcalc/text.hpp"

namespace bcalc {

// Spacetime abbreviations usable in formula text:
//   C_abc = nabla_c P_ab - nabla_b P_ac         (Cotton)
//   B_ab  = nabla^c C_abc - P^dc W_dabc          (Bach)
//   j1_a  = nabla^b F_ba
//   j3_a, X_ab                                   (the d = 8 gauge currents)
ParseEnv spacetime_env(const std::string& free_letters);

// Levi-Civita forms of the boundary outputs, canonical. Free ids:
//   obstruction O_ab 0 1, conservation O_a 0, ym-equation Y_a 0,
//   ym-conservation Y (none), gjms P (none), weyl-J Gamma_c J_a (0 = c, 1 = a).
enum class Output { Obstruction, Conservation, YMEquation, YMConservation, GJMS, WeylJ };

const char* output_name(Output o);
// Boundary expression and its pullback; cached per (output, d, l). Thread safe.
const Expr& boundary_form(Output o, int d, int ell = 0);
const Expr& spacetime_form(Output o, int d, int ell = 0);
// Calculus used for an output (gravity, gauge or scalar sector).
Calculus& calculus_for(Output o, int d, int ell = 0);
// Scalar sector at an arbitrary weight; shares the cache above.
Calculus& scalar_calculus(int d, const Rat& w);
// Drops every cached calculus and form (used to time builds from scratch).
void clear_caches();

}  // namespace bcalc
