#include "bcalc/canon.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace bcalc {

namespace {

struct Loc {
  std::vector<Factor>* list;
  int f;
  int p;
};

bool find_other(Term& t, int id, const Factor* skip, Loc& out) {
  for (auto* L : {&t.fac, &t.word})
    for (int f = 0; f < (int)L->size(); ++f) {
      Factor& fa = (*L)[f];
      if (&fa == skip) continue;
      for (int p = 0; p < fa.n; ++p)
        if (fa.ix[p].id == id) {
          out = {L, f, p};
          return true;
        }
    }
  return false;
}

bool fold_metrics(Term& t, int d) {
  bool again = true;
  while (again) {
    again = false;
    for (int f = 0; f < (int)t.fac.size() && !again; ++f) {
      Factor& g = t.fac[f];
      if (g.sym != G) continue;
      if (g.nder > 0) return false;
      if (g.ix[0].id == g.ix[1].id) {
        t.c *= d;
        t.fac.erase(t.fac.begin() + f);
        again = true;
        break;
      }
      for (int k = 0; k < 2; ++k) {
        Loc loc;
        if (find_other(t, g.ix[k].id, &g, loc)) {
          Idx other = g.ix[1 - k];
          (*loc.list)[loc.f].ix[loc.p] = other;
          t.fac.erase(t.fac.begin() + f);
          again = true;
          break;
        }
      }
    }
  }
  return true;
}

struct Cand {
  int item;
  int elem;
};

struct State {
  std::vector<Cand> picks;
  uint64_t remaining = 0;
  std::vector<int16_t> label;
  int next = 0;
  int sign = 1;
};

}  // namespace

bool canonicalize_term(Term& t, int d) {
  if (t.c == 0) return false;
  if (!fold_metrics(t, d)) return false;
  if (t.c == 0) return false;
  mark_contractions(t);

  for (auto* L : {&t.fac, &t.word})
    for (auto& f : *L) {
      const auto& info = sym_info(f.sym);
      for (auto [i, j] : info.traceless)
        if (f.slot(i).id == f.slot(j).id) return false;
    }

  const int nfac = (int)t.fac.size();
  const int nword = (int)t.word.size();
  if (nfac > 64) throw std::length_error("too many factors");

  int maxd = max_dummy(t);
  const int nlab = maxd - kDummyBase + 1;

  auto item = [&](int i) -> const Factor& { return i < nfac ? t.fac[i] : t.word[i - nfac]; };
  auto coarse = [&](int i) {
    const Factor& f = item(i);
    return (f.sym << 16) | (f.nder << 8) | f.n;
  };

  State init;
  init.remaining = nfac == 64 ? ~0ull : ((1ull << nfac) - 1);
  init.label.assign(std::max(nlab, 0), -1);
  std::vector<State> beam{init};

  std::vector<int> best, code;
  std::vector<int> sorted_keys;
  for (int i = 0; i < nfac; ++i) sorted_keys.push_back(coarse(i));
  std::sort(sorted_keys.begin(), sorted_keys.end());

  auto encode = [&](const State& s, int it, int elem, std::vector<int>& out, std::vector<int16_t>* lab,
                    int* next) {
    const Factor& f = item(it);
    const auto& perm = sym_info(f.sym).group[elem].first;
    out.clear();
    out.push_back(f.sym);
    out.push_back(f.nder);
    out.push_back(f.n);
    std::vector<int16_t> local;
    int nx = s.next;
    auto enc = [&](const Idx& x) {
      if (!is_dummy(x.id)) {
        out.push_back(x.id * 2 + (x.up ? 1 : 0));
        return;
      }
      int k = x.id - kDummyBase;
      int l = s.label[k];
      if (l < 0) {
        for (size_t q = 0; q + 1 < local.size(); q += 2)
          if (local[q] == k) l = local[q + 1];
        if (l < 0) {
          l = nx++;
          local.push_back((int16_t)k);
          local.push_back((int16_t)l);
        }
      }
      out.push_back(2000 + l);
    };
    for (int i = 0; i < f.nder; ++i) enc(f.ix[i]);
    for (int k = 0; k < f.nslots(); ++k) enc(f.slot(perm[k]));
    if (lab) {
      for (size_t q = 0; q < local.size(); q += 2) (*lab)[local[q]] = local[q + 1];
      *next = nx;
    }
  };

  const int total = nfac + nword;
  for (int pos = 0; pos < total; ++pos) {
    std::vector<std::pair<int, Cand>> chosen;  // (state, cand)
    best.clear();
    bool have = false;
    for (int si = 0; si < (int)beam.size(); ++si) {
      const State& s = beam[si];
      auto consider = [&](int it) {
        const Factor& f = item(it);
        int ne = (int)sym_info(f.sym).group.size();
        for (int e = 0; e < ne; ++e) {
          encode(s, it, e, code, nullptr, nullptr);
          if (!have || code < best) {
            best = code;
            have = true;
            chosen.clear();
            chosen.push_back({si, {it, e}});
          } else if (code == best) {
            chosen.push_back({si, {it, e}});
          }
        }
      };
      if (pos < nfac) {
        int ck = sorted_keys[pos];
        for (int i = 0; i < nfac; ++i)
          if ((s.remaining >> i & 1) && coarse(i) == ck) consider(i);
      } else {
        consider(pos);
      }
    }
    std::vector<State> nb;
    std::map<std::pair<uint64_t, std::vector<int16_t>>, int> seen;
    for (auto& [si, cd] : chosen) {
      State ns = beam[si];
      const Factor& f = item(cd.item);
      ns.sign *= sym_info(f.sym).group[cd.elem].second;
      encode(beam[si], cd.item, cd.elem, code, &ns.label, &ns.next);
      if (cd.item < nfac) ns.remaining &= ~(1ull << cd.item);
      ns.picks.push_back(cd);
      auto key = std::make_pair(ns.remaining, ns.label);
      auto it = seen.find(key);
      if (it != seen.end()) {
        if (nb[it->second].sign != ns.sign) return false;
        continue;
      }
      seen[key] = (int)nb.size();
      nb.push_back(std::move(ns));
    }
    beam = std::move(nb);
  }
  for (const auto& s : beam)
    if (s.sign != beam[0].sign) return false;

  const State& s = beam[0];
  std::vector<Factor> nf, nw;
  std::vector<char> seen_once(std::max(nlab, 0), 0);
  for (int pos = 0; pos < total; ++pos) {
    const Cand& cd = s.picks[pos];
    const Factor& f = item(cd.item);
    const auto& perm = sym_info(f.sym).group[cd.elem].first;
    Factor g = f;
    for (int k = 0; k < f.nslots(); ++k) g.slot(k) = f.slot(perm[k]);
    for (int i = 0; i < g.n; ++i) {
      Idx& x = g.ix[i];
      if (!is_dummy(x.id)) continue;
      int k = x.id - kDummyBase;
      x.up = seen_once[k] != 0;
      seen_once[k] = 1;
      x.id = (int16_t)(kDummyBase + s.label[k]);
    }
    (pos < nfac ? nf : nw).push_back(g);
  }
  t.fac = std::move(nf);
  t.word = std::move(nw);
  if (s.sign < 0) t.c = -t.c;
  return true;
}

std::string term_key(const Term& t) {
  std::string k;
  k.reserve(8 + 24 * (t.fac.size() + t.word.size()));
  auto put = [&](int v) {
    k.push_back((char)(v & 0xff));
    k.push_back((char)((v >> 8) & 0xff));
  };
  put(t.lam);
  auto putf = [&](const Factor& f) {
    put(f.sym | (f.nder << 8));
    put(f.n);
    for (int i = 0; i < f.n; ++i) put(f.ix[i].id * 2 + (f.ix[i].up ? 1 : 0));
  };
  for (const auto& f : t.fac) putf(f);
  put(0x7fff);
  for (const auto& f : t.word) putf(f);
  return k;
}

Expr canonical(const Expr& e, int d) {
  std::unordered_map<std::string, size_t> pos;
  Expr out;
  out.reserve(e.size());
  for (const auto& t0 : e) {
    Term t = t0;
    if (!canonicalize_term(t, d)) continue;
    std::string k = term_key(t);
    auto it = pos.find(k);
    if (it == pos.end()) {
      pos.emplace(std::move(k), out.size());
      out.push_back(std::move(t));
    } else {
      out[it->second].c += t.c;
    }
  }
  Expr res;
  res.reserve(out.size());
  std::vector<std::pair<std::string, size_t>> order;
  for (size_t i = 0; i < out.size(); ++i)
    if (out[i].c != 0) order.push_back({term_key(out[i]), i});
  std::sort(order.begin(), order.end());
  for (auto& [k, i] : order) res.push_back(std::move(out[i]));
  return res;
}

bool is_zero(const Expr& e, int d) { return canonical(e, d).empty(); }

bool equal_exact(const Expr& a, const Expr& b, int d) { return is_zero(a - b, d); }

}  // namespace bcalc
