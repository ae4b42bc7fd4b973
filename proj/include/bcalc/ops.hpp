#pragma once

#include <functional>

#include "bcalc/expr.hpp"

namespace bcalc {

// Gamma on the subleading data. Free ids of each template:
//   gT:   0 = Gamma index, 1 2 = slots of calligraphic T (all lower)
//   gJ:   0 = Gamma index, 1 = slot of calligraphic J
//   gPsi: 0 = Gamma index
struct GammaTables {
  Ctx ctx;
  bool has_T = false, has_J = false, has_psi = false;
  Expr gT, gJ, gPsi;
};

// Leibniz action of a factor-level map. fn receives the factor and a base id
// above every id in the enclosing term.
using FactorMap = std::function<Expr(const Factor&, int base)>;
Expr leibniz(const Expr& e, const FactorMap& fn);

// Replaces factor pos of t (of the word when in_word) by each term of r,
// appending the products to out.
void splice(Expr& out, const Term& t, bool in_word, int pos, const Expr& r);

// Levi-Civita / boundary covariant derivative (prepends the index).
Expr nabla(const Expr& e, Idx a);
Expr nabla_factor(const Factor& f, Idx a);

// GL generator Delta^P_Q on the free indices.
Expr gl(const Expr& e, Idx P, Idx Q);
// Delta^C_C
Expr trace_gl(const Expr& e);
// Weight operator.
Expr weight_op(const Expr& e, const Ctx& ctx);
// Gamma^a; a carries its variance (up is the natural one).
Expr gamma(const Expr& e, Idx a, const GammaTables& tab);
Expr gamma_factor(const Factor& f, Idx a, const GammaTables& tab, int base);
// L e - e L for a Lie-valued L.
Expr bracket(const Expr& L, const Expr& e, int min_base = 0);

// [nabla_a, nabla_b] h in the boundary algebra.
Expr commutator_boundary(const Expr& h, Idx a, Idx b, const GammaTables& tab, int min_base = 0);
// [nabla_a, nabla_b] h for the Levi-Civita connection of g, written with W and P.
Expr commutator_spacetime(const Expr& h, Idx a, Idx b, int min_base = 0);

inline Idx up(int id) { return Idx{(int16_t)id, true}; }
inline Idx lo(int id) { return Idx{(int16_t)id, false}; }

}  // namespace bcalc
