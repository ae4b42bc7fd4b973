#include "bcalc/ops.hpp"

#include <map>
#include <stdexcept>

namespace bcalc {

void splice(Expr& out, const Term& t, bool in_word, int pos, const Expr& r) {
  for (const auto& u : r) {
    Term n;
    n.c = t.c * u.c;
    n.lam = t.lam + u.lam;
    n.fac.reserve(t.fac.size() + u.fac.size());
    if (!in_word) {
      for (int i = 0; i < (int)t.fac.size(); ++i)
        if (i != pos) n.fac.push_back(t.fac[i]);
      if (!u.word.empty()) throw std::logic_error("non-Lie factor mapped to a Lie word");
      n.word = t.word;
    } else {
      n.fac = t.fac;
      n.word.assign(t.word.begin(), t.word.begin() + pos);
      n.word.insert(n.word.end(), u.word.begin(), u.word.end());
      n.word.insert(n.word.end(), t.word.begin() + pos + 1, t.word.end());
    }
    n.fac.insert(n.fac.end(), u.fac.begin(), u.fac.end());
    out.push_back(std::move(n));
  }
}

namespace {

Factor strip_outer(const Factor& f) {
  Factor h = f;
  for (int i = 1; i < f.n; ++i) h.ix[i - 1] = f.ix[i];
  h.n = (uint8_t)(f.n - 1);
  h.nder = (uint8_t)(f.nder - 1);
  return h;
}

int fresh_base(const Term& t, std::initializer_list<Idx> extra) {
  int m = max_id(t);
  for (const auto& i : extra) m = std::max(m, (int)i.id);
  return std::max(m + 1, kDummyBase);
}

int fresh_base(const Expr& e, std::initializer_list<Idx> extra) {
  int m = max_id(e);
  for (const auto& i : extra) m = std::max(m, (int)i.id);
  return std::max(m + 1, kDummyBase);
}

Expr gfac(Idx a, Idx b) { return single(make_factor(G, {a, b})); }

}  // namespace

Expr leibniz(const Expr& e, const FactorMap& fn) {
  Expr out;
  for (const auto& t : e) {
    int base = fresh_base(t, {});
    for (int i = 0; i < (int)t.fac.size(); ++i) {
      Expr r = fn(t.fac[i], base);
      if (!r.empty()) splice(out, t, false, i, r);
    }
    for (int i = 0; i < (int)t.word.size(); ++i) {
      Expr r = fn(t.word[i], base);
      if (!r.empty()) splice(out, t, true, i, r);
    }
  }
  return out;
}

Expr nabla_factor(const Factor& f, Idx a) {
  if (f.sym == G) return {};
  if (f.n + 1 > kMaxIdx) throw std::length_error("too many indices on a factor");
  Factor g = f;
  for (int i = f.n; i > 0; --i) g.ix[i] = f.ix[i - 1];
  g.ix[0] = a;
  g.n++;
  g.nder++;
  return single(g);
}

Expr nabla(const Expr& e, Idx a) {
  return leibniz(e, [&](const Factor& f, int) { return nabla_factor(f, a); });
}

Expr gl(const Expr& e, Idx P, Idx Q) {
  Expr out;
  for (const auto& t : e) {
    std::map<int, int> count;
    for_each_index(t, [&](const Idx& i) { ++count[i.id]; });
    for (auto* Lc : {&t.fac, &t.word}) {
      bool in_word = Lc == &t.word;
      for (int f = 0; f < (int)Lc->size(); ++f) {
        const Factor& fa = (*Lc)[f];
        for (int p = 0; p < fa.n; ++p) {
          Idx E = fa.ix[p];
          if (count[E.id] != 1) continue;
          Term n = t;
          auto& L = in_word ? n.word : n.fac;
          if (!E.up) {
            L[f].ix[p] = Q;
            n.fac.push_back(make_factor(G, {P, E}));
          } else {
            L[f].ix[p] = P;
            n.fac.push_back(make_factor(G, {E, Q}));
            n.c = -n.c;
          }
          out.push_back(std::move(n));
        }
      }
    }
  }
  return out;
}

Expr trace_gl(const Expr& e) {
  Expr out;
  for (const auto& t : e) {
    std::map<int, std::pair<int, bool>> count;
    for_each_index(t, [&](const Idx& i) {
      auto& c = count[i.id];
      c.first++;
      c.second = i.up;
    });
    int k = 0;
    for (auto& [id, c] : count)
      if (c.first == 1) k += c.second ? -1 : 1;
    if (k == 0) continue;
    out.push_back(t);
    out.back().c *= k;
  }
  return out;
}

Expr weight_op(const Expr& e, const Ctx& ctx) {
  Expr out;
  for (const auto& t : e) {
    Rat w = weight_of_term(t, ctx);
    if (w == 0) continue;
    out.push_back(t);
    out.back().c *= w;
  }
  return out;
}

Expr bracket(const Expr& L, const Expr& e, int min_base) {
  Expr out;
  for (const auto& u : e) {
    if (u.word.empty()) continue;
    for (const auto& l0 : L) {
      // ids >= kDummyBase in L may be contracted with the context, so only
      // the pairs internal to L are renamed
      Term l = l0;
      int next = std::max({fresh_base(u, {}), max_id(l) + 1, min_base});
      std::map<int, int> cnt, ren;
      for_each_index(l, [&](const Idx& i) { ++cnt[i.id]; });
      for (auto& [id, n] : cnt)
        if (n == 2) ren[id] = next++;
      for_each_index(l, [&](Idx& i) {
        auto it = ren.find(i.id);
        if (it != ren.end()) i.id = (int16_t)it->second;
      });
      Term a = mul_raw(l, u);
      Term b = a;
      b.word = u.word;
      b.word.insert(b.word.end(), l.word.begin(), l.word.end());
      b.c = -b.c;
      out.push_back(std::move(a));
      out.push_back(std::move(b));
    }
  }
  return out;
}

Expr gamma_factor(const Factor& f, Idx a, const GammaTables& tab, int base) {
  const auto& info = sym_info(f.sym);
  if (info.theory != Theory::Boundary) throw std::logic_error("Gamma acts on boundary symbols only");
  if (f.nder == 0) {
    switch (f.sym) {
      case G:
      case W:
      case F:
      case PHI:
        return {};
      case C:
        return single(make_factor(W, {a, f.slot(0), f.slot(1), f.slot(2)}), -1);
      case TT:
        if (!tab.has_T) throw std::logic_error("Gamma on T requested without a table");
        return instantiate(tab.gT, {a, f.slot(0), f.slot(1)}, base);
      case JJ:
        if (!tab.has_J) throw std::logic_error("Gamma on J requested without a table");
        return instantiate(tab.gJ, {a, f.slot(0)}, base);
      case PSI:
        if (!tab.has_psi) throw std::logic_error("Gamma on psi requested without a table");
        return instantiate(tab.gPsi, {a}, base);
    }
    throw std::logic_error("Gamma: unknown symbol");
  }
  Idx b = f.ix[0];
  Factor h = strip_outer(f);
  Expr H = single(h);
  int nb = std::max(base, std::max((int)a.id, (int)b.id) + 1);
  nb = std::max(nb, max_id(H) + 1);
  Expr out = nabla(gamma_factor(h, a, tab, nb), b);
  Idx c{(int16_t)nb, false}, d{(int16_t)(nb + 1), false};
  Idx cu = c, du = d;
  cu.up = true;
  du.up = true;
  // g^{ac} g_{bd} Delta^d_c h
  append(out, mul_raw(mul_raw(gfac(a, cu), gfac(b, d)), gl(H, du, c)));
  // - Delta^a_b h
  append_scaled(out, gl(H, a, b), -1);
  // - delta^a_b Delta^c_c h + delta^a_b Delta h
  Expr tr = trace_gl(H);
  Expr wt = weight_op(H, tab.ctx);
  append(out, mul_raw(gfac(a, b), wt - tr));
  return out;
}

Expr gamma(const Expr& e, Idx a, const GammaTables& tab) {
  return leibniz(e, [&](const Factor& f, int base) {
    return gamma_factor(f, a, tab, std::max(base, (int)a.id + 1));
  });
}

Expr commutator_boundary(const Expr& h, Idx a, Idx b, const GammaTables& tab, int min_base) {
  int base = std::max(fresh_base(h, {a, b}), min_base);
  Idx c{(int16_t)base, false}, d{(int16_t)(base + 1), false};
  Idx cu = c, du = d;
  cu.up = true;
  du.up = true;
  Expr out;
  // - W^d_{cab} Delta^c_d h
  append(out, mul_raw(single(make_factor(W, {du, c, a, b}), -1), gl(h, cu, d)));
  // - C_{dab} Gamma^d h
  append(out, mul_raw(single(make_factor(C, {d, a, b}), -1), gamma(h, du, tab)));
  // + [F_ab, h]
  append(out, bracket(single(make_factor(F, {a, b})), h, base + 2));
  return out;
}

Expr commutator_spacetime(const Expr& h, Idx a, Idx b, int min_base) {
  int base = std::max(fresh_base(h, {a, b}), min_base);
  Idx c{(int16_t)base, false}, d{(int16_t)(base + 1), false};
  Idx cu = c, du = d;
  cu.up = true;
  du.up = true;
  Expr gld = gl(h, cu, d);
  // R^d_{cab} = W^d_{cab} - P_{ca} delta^d_b + P_{cb} delta^d_a + P^d_a g_{bc} - P^d_b g_{ac}
  Expr R = single(make_factor(SW, {du, c, a, b}));
  append(R, mul_raw(single(make_factor(SP, {c, a}), -1), gfac(du, b)));
  append(R, mul_raw(single(make_factor(SP, {c, b})), gfac(du, a)));
  append(R, mul_raw(single(make_factor(SP, {du, a})), gfac(b, c)));
  append(R, mul_raw(single(make_factor(SP, {du, b}), -1), gfac(a, c)));
  Expr out = -mul_raw(R, gld);
  append(out, bracket(single(make_factor(SF, {a, b})), h, base + 2));
  return out;
}

}  // namespace bcalc
