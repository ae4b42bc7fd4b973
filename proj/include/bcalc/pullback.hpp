#pragma once

#include <map>
#include <string>

#include "bcalc/expr.hpp"
#include "bcalc/ops.hpp"

namespace bcalc {

// Pullback of boundary expressions to the solution space in the metric-like
// gauge:  s(nabla_a f) = nabla^g_a s(f) + P_a^u s(Gamma_u f).
// Primitives map to their Levi-Civita counterparts; the Cotton tensor is
// written through the Schouten tensor, C_dab = nabla_b P_da - nabla_a P_db.
class Pullback {
 public:
  Pullback(const GammaTables& tab, int d) : tab_(tab), d_(d) {}

  Expr operator()(const Expr& e);

  size_t cached() const { return memo_.size(); }

 private:
  const Expr& factor_template(const Factor& shape);

  const GammaTables& tab_;
  int d_;
  std::map<std::string, Expr> memo_;
};

}  // namespace bcalc
