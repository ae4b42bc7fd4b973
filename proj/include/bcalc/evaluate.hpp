#pragma once

#include <vector>

#include "bcalc/expr.hpp"
#include "bcalc/geometry.hpp"

namespace bcalc {

// Components of a spacetime expression at a point, free ids in increasing
// order, upper free indices raised with g^-1.
struct NumValue {
  int n = 0;
  std::vector<int> free;
  std::vector<bool> up;
  std::vector<double> v;
  // largest magnitude of a single term (all products taken in absolute value)
  double scale = 0;

  double max_abs() const;
  // max |v| / scale; the plain maximum when every term vanishes
  double residual() const;
};

// Words of Lie-valued factors become commuting products: brackets drop out.
Expr abelianize(const Expr& e, int d);

// The expression must be abelian (no words longer than one factor) unless
// the gauge sector is absent.
NumValue evaluate(const Expr& e, const Geometry& geo, double lambda);

// Relative size of a - b against the larger of the two.
double relative_difference(const NumValue& a, const NumValue& b);

}  // namespace bcalc
