#include "bcalc/derivation.hpp"

#include <stdexcept>

#include "bcalc/spacetime.hpp"

namespace bcalc {

namespace {

std::string idx_name(Idx i) { return (i.up ? "^" : "_") + std::to_string(i.id); }

int fresh(const Expr& e, std::initializer_list<Idx> extra) {
  int m = max_id(e);
  for (const auto& i : extra) m = std::max(m, (int)i.id);
  return std::max(m + 1, kDummyBase);
}

Expr g(Idx a, Idx b) { return single(make_factor(G, {a, b})); }

Idx raised(Idx i) { return Idx{i.id, true}; }

// [Gamma_a, nabla_b] e
Expr gamma_nabla(Idx a, Idx b, const Expr& e, const GammaTables& tab) {
  int base = fresh(e, {a, b});
  Idx c{(int16_t)base, false}, d{(int16_t)(base + 1), false};
  Expr out = mul_raw(mul_raw(g(a, raised(c)), g(b, d)), gl(e, raised(d), c));
  append_scaled(out, gl(e, a, b), -1);
  append(out, mul_raw(g(a, b), weight_op(e, tab.ctx) - trace_gl(e)));
  return out;
}

// [Delta^P_Q, X_c] e where X_c e = op(e, c) only adds the index c.
template <class Op>
Expr gl_index(Idx P, Idx Q, Idx c, const Expr& e, Op op) {
  if (!c.up) return mul_raw(g(P, c), op(e, Q));
  return -mul_raw(g(c, Q), op(e, P));
}

}  // namespace

std::string deriv_name(const Deriv& X) {
  switch (X.kind) {
    case Deriv::Nabla:
      return "nabla" + idx_name(X.a);
    case Deriv::Gamma:
      return "Gamma" + idx_name(X.a);
    case Deriv::GL:
      return "Delta" + idx_name(X.a) + idx_name(X.b);
    case Deriv::Weight:
      return "Delta";
  }
  return "?";
}

Expr apply(const Deriv& X, const Expr& e, const GammaTables& tab) {
  switch (X.kind) {
    case Deriv::Nabla:
      return nabla(e, X.a);
    case Deriv::Gamma:
      return gamma(e, X.a, tab);
    case Deriv::GL:
      return gl(e, X.a, X.b);
    case Deriv::Weight:
      return weight_op(e, tab.ctx);
  }
  throw std::logic_error("apply: unknown generator");
}

int weight_shift(const Deriv& X) {
  switch (X.kind) {
    case Deriv::Nabla:
      return X.a.up ? -2 : 0;
    case Deriv::Gamma:
      return X.a.up ? 0 : 2;
    default:
      return 0;
  }
}

Expr commutator(const Deriv& X, const Deriv& Y, const Expr& e, const GammaTables& tab) {
  using K = Deriv::Kind;
  if (X.kind == K::Weight) return Rat(weight_shift(Y)) * apply(Y, e, tab);
  if (Y.kind == K::Weight) return Rat(-weight_shift(X)) * apply(X, e, tab);
  // order the pair as Nabla < Gamma < GL, flipping the sign
  if (X.kind > Y.kind) return -commutator(Y, X, e, tab);
  auto nab = [](const Expr& h, Idx i) { return nabla(h, i); };
  auto gam = [&](const Expr& h, Idx i) { return gamma(h, i, tab); };
  if (X.kind == K::Nabla) {
    if (Y.kind == K::Nabla) return commutator_boundary(e, X.a, Y.a, tab);
    if (Y.kind == K::Gamma) return -gamma_nabla(Y.a, X.a, e, tab);
    return -gl_index(Y.a, Y.b, X.a, e, nab);
  }
  if (X.kind == K::Gamma) {
    if (Y.kind == K::Gamma) return {};
    return -gl_index(Y.a, Y.b, X.a, e, gam);
  }
  // [Delta^P_Q, Delta^R_S] = delta^P_S Delta^R_Q - delta^R_Q Delta^P_S
  Expr out = mul_raw(g(X.a, Y.b), gl(e, Y.a, X.b));
  append_scaled(out, mul_raw(g(Y.a, X.b), gl(e, X.a, Y.b)), -1);
  return out;
}

Expr jacobiator(const Deriv& X, const Deriv& Y, const Deriv& Z, const Expr& e, const GammaTables& tab) {
  Expr out;
  auto one = [&](const Deriv& A, const Deriv& B, const Deriv& C) {
    append(out, commutator(A, B, apply(C, e, tab), tab));
    append_scaled(out, apply(C, commutator(A, B, e, tab), tab), -1);
  };
  one(X, Y, Z);
  one(Y, Z, X);
  one(Z, X, Y);
  return out;
}

Deriv random_deriv(std::mt19937_64& rng, int id0, int id1) {
  Deriv X;
  // nabla and Gamma carry the curvature, so they are drawn more often
  X.kind = (Deriv::Kind)std::discrete_distribution<int>({4, 3, 2, 1})(rng);
  bool up = std::uniform_int_distribution<int>(0, 1)(rng);
  X.a = Idx{(int16_t)id0, X.kind == Deriv::GL ? true : up};
  X.b = Idx{(int16_t)id1, false};
  return X;
}

GammaTables full_tables(int d, const Rat& w) {
  GammaTables t = calculus_for(Output::YMEquation, d).tables();
  const GammaTables& s = scalar_calculus(d, w).tables();
  t.gPsi = s.gPsi;
  t.has_psi = s.has_psi;
  t.ctx.w = w;
  return t;
}

}  // namespace bcalc
