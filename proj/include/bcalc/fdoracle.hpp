#pragma once

#include <vector>

#include "bcalc/fixture.hpp"

namespace bcalc {

// Brute-force curvature by nested 8th order central differences in long
// double, sharing nothing with the jet path except the formula evaluator.
// Same conventions and layouts as Geometry (all lower, row-major):
//   cotton C_abc = nabla_c P_ab - nabla_b P_ac,  bach B_ab = nabla^c C_abc - P^dc W_dabc.
struct FdCurvature {
  std::vector<double> christoffel, riemann, ricci, schouten, weyl, cotton, bach;
};

FdCurvature fd_curvature(const Fixture& fx, const std::vector<double>& x0, double h, bool with_cotton,
                         bool with_bach);

}  // namespace bcalc
