#include "bcalc/random_expr.hpp"

#include <algorithm>

namespace bcalc {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::vector<int> symbols(const RandomExprOptions& o) {
  if (o.theory == Theory::Boundary) {
    std::vector<int> s{G, W, C, PHI};
    if (o.lie) s.push_back(F);
    if (o.subleading) s.insert(s.end(), {TT, PSI});
    if (o.lie && o.subleading) s.push_back(JJ);
    return s;
  }
  std::vector<int> s{G, SW, SP, SPHI};
  if (o.lie) s.push_back(SF);
  if (o.subleading) s.insert(s.end(), {ST, SPSI});
  if (o.lie && o.subleading) s.push_back(SJ);
  return s;
}

Term random_term(std::mt19937_64& rng, const RandomExprOptions& o, const std::vector<int>& syms) {
  const int scalar_sym = o.theory == Theory::Boundary ? PHI : SPHI;
  struct Slot {
    uint8_t sym;
    int nder;
  };
  std::vector<Slot> fs;
  int nf = pick(rng, 1, o.max_factors);
  for (int k = 0; k < nf; ++k) {
    Slot s{(uint8_t)syms[pick(rng, 0, (int)syms.size() - 1)], 0};
    if (s.sym != G) s.nder = pick(rng, 0, o.max_derivs);
    fs.push_back(s);
  }
  const int nfree = (int)o.free.size();
  auto total = [&] {
    int n = 0;
    for (const auto& s : fs) n += s.nder + sym_info(s.sym).nslots;
    return n;
  };
  // add derivatives until the free indices fit and the rest pairs up
  while (total() < nfree || (total() - nfree) % 2) {
    std::vector<int> cand;
    for (int k = 0; k < (int)fs.size(); ++k)
      if (fs[k].sym != G && fs[k].nder < o.max_derivs + 2) cand.push_back(k);
    if (cand.empty())
      fs.push_back({(uint8_t)scalar_sym, 1});
    else
      fs[cand[pick(rng, 0, (int)cand.size() - 1)]].nder++;
  }
  const int n = total();
  std::vector<Idx> pos(n);
  for (int k = 0; k < nfree; ++k) pos[k] = o.free[k];
  int dummy = kDummyBase;
  for (int k = nfree; k < n; k += 2) {
    bool up = pick(rng, 0, 1);
    pos[k] = Idx{(int16_t)dummy, up};
    pos[k + 1] = Idx{(int16_t)dummy, !up};
    ++dummy;
  }
  std::shuffle(pos.begin(), pos.end(), rng);
  Term t;
  int num = pick(rng, 1, 9) * (pick(rng, 0, 1) ? 1 : -1);
  t.c = Rat(num, pick(rng, 1, 6));
  t.c.canonicalize();
  t.lam = pick(rng, 0, o.max_lam);
  int p = 0;
  for (const auto& s : fs) {
    Factor f;
    f.sym = s.sym;
    f.nder = (uint8_t)s.nder;
    f.n = (uint8_t)(s.nder + sym_info(s.sym).nslots);
    for (int i = 0; i < f.n; ++i) f.ix[i] = pos[p++];
    (sym_info(s.sym).lie ? t.word : t.fac).push_back(f);
  }
  return t;
}

}  // namespace

Expr random_expr(std::mt19937_64& rng, const RandomExprOptions& o) {
  auto syms = symbols(o);
  Expr e;
  int nt = pick(rng, 1, o.max_terms);
  for (int k = 0; k < nt; ++k) e.push_back(random_term(rng, o, syms));
  return e;
}

}  // namespace bcalc
