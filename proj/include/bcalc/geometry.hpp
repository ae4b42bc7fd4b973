#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "bcalc/expr.hpp"
#include "bcalc/fixture.hpp"
#include "bcalc/jet.hpp"

namespace bcalc {

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rank-r tensor of jets, all indices lower, row-major (first index slowest).
struct JetTensor {
  int n = 0, rank = 0;
  std::vector<Jet> c;
  std::vector<double> values() const;
};

// Highest derivative order needed per spacetime symbol.
using Needs = std::map<int, int>;
void add_needs(Needs& need, const Expr& e);

// Curvature and field tensors of a fixture at one point, from jets of the
// component formulas. Conventions:
//   Gamma^k_ij, [nabla_c, nabla_d] V^a = R^a_bcd V^b, Ric_bd = R^a_bad,
//   P = (Ric - R g / (2(n-1))) / (n-2), W_dcab = R_dcab - (P g)_dcab with
//   R^d_cab = W^d_cab - P_ca d^d_b + P_cb d^d_a + P^d_a g_bc - P^d_b g_ac,
//   F_ab = d_a A_b - d_b A_a.
// Tensor(sym, k) is nabla^k of the symbol, derivative indices first,
// outermost first, all lower.
class Geometry {
 public:
  Geometry(const Fixture& fx, const std::vector<double>& x0, const Needs& need);

  int dim() const { return n_; }
  const std::vector<double>& g() const { return g0_; }
  const std::vector<double>& ginv() const { return gi0_; }
  const std::vector<double>& tensor(int sym, int nder) const;
  bool has(int sym, int nder) const;

  // Christoffel symbols Gamma^k_ij and the all-lower Riemann tensor at the point
  // (available when curvature was requested).
  const std::vector<double>& christoffel() const { return gam0_; }
  const std::vector<double>& riemann() const { return riem0_; }
  const std::vector<double>& ricci() const { return ric0_; }

  static JetTensor nabla(const JetTensor& t, const JetTensor& gamma);

 private:
  int n_;
  std::vector<double> g0_, gi0_, gam0_, riem0_, ric0_;
  std::map<std::pair<int, int>, std::vector<double>> vals_;
};

}  // namespace bcalc
