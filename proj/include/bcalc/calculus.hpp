#pragma once

#include <map>
#include <optional>

#include "bcalc/expr.hpp"
#include "bcalc/ops.hpp"

namespace bcalc {

// One flattened piece of D^(N)_A: coeff * op.  Template ids inside coeff and
// the op indices: 0 = A (lower), 1 and 2 = indices linking coeff to the op.
struct OpTerm {
  enum Kind { Nabla, Gamma, GL, Bracket } kind;
  Expr coeff;
  Idx i1{}, i2{};
};

struct DOp {
  std::vector<OpTerm> ops;
  bool zero() const { return ops.empty(); }
};

struct CalcOptions {
  int d = 4;
  bool ym = false;
  bool scalar = false;
  Rat w = 1;
};

// Recursive tower of the boundary calculus for one boundary dimension.
// Towers are stored as canonical templates with lower free ids:
//   T(N): 0 1      Jg(N): 0 1 2      FY(N): 0 1      JY(N): 0      phi(N): none
class Calculus {
 public:
  explicit Calculus(const CalcOptions& o);

  const Ctx& ctx() const { return tab_.ctx; }
  const GammaTables& tables() const { return tab_; }
  int d() const { return opt_.d; }
  int D() const { return opt_.d + 1; }
  bool ym() const { return opt_.ym; }
  bool scalar() const { return opt_.scalar; }

  const Expr& T(int N);
  const Expr& Jg(int N);
  const Expr& FY(int N);
  const Expr& JY(int N);
  const Expr& phi(int N);
  const DOp& Dop(int N);

  // D^(N)_A f
  Expr D(int N, Idx A, const Expr& f);
  Expr apply_op(const OpTerm& op, Idx A, const Expr& f) const;

  // Obstructions and conservation laws (free ids 0, 1).
  Expr O2();   // O_AB
  Expr O1();   // O_A
  Expr YB();   // Y_B
  Expr Y0();   // Y
  Expr gjms(); // the scalar obstruction P

  // Gamma on calligraphic T / J and psi, as stored in the tables.
  const Expr& gammaT() const { return tab_.gT; }
  const Expr& gammaJ() const { return tab_.gJ; }
  const Expr& gammaPsi() const { return tab_.gPsi; }

  // Gamma_A T^(N)_BC from the closed recursion (free ids 0 1 2).
  Expr gammaT_formula(int N);
  // Gamma_C J^(N)_B from the closed recursion (free ids 0 1).
  Expr gammaJ_formula(int N);

  // L(n) = nabla_Omega^n (nabla_A nabla^A phi) pulled back
  Expr omega_laplacian(int n);

  int nstar() const;

 private:
  Expr tower_T(int N);
  Expr tower_J(int N);
  Expr tower_FY(int N);
  Expr tower_JY(int N);
  Expr tower_phi(int N);
  DOp build_D(int N);

  CalcOptions opt_;
  GammaTables tab_;
  std::map<int, Expr> T_, J_, FY_, JY_, phi_;
  std::map<int, DOp> D_;
  std::map<int, Expr> omega_lap_;
};

mpz_class binom(int n, int k);
// d^i_N = C(N, i) (N - 1 - i)
mpz_class dcoef(int i, int N);

}  // namespace bcalc
