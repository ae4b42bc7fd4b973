#include "bcalc/expr.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bcalc {

bool Factor::operator==(const Factor& o) const {
  if (sym != o.sym || nder != o.nder || n != o.n) return false;
  for (int i = 0; i < n; ++i)
    if (!(ix[i] == o.ix[i])) return false;
  return true;
}

Factor make_factor(Sym s, std::initializer_list<Idx> slots) {
  return make_factor(s, std::vector<Idx>(slots));
}

Factor make_factor(Sym s, const std::vector<Idx>& slots) {
  Factor f;
  f.sym = s;
  if ((int)slots.size() != sym_info(s).nslots)
    throw std::logic_error("slot count mismatch for " + std::string(sym_info(s).name));
  f.n = (uint8_t)slots.size();
  for (size_t i = 0; i < slots.size(); ++i) f.ix[i] = slots[i];
  return f;
}

namespace {

using Group = std::vector<std::pair<std::vector<int>, int>>;

Group riemann_group() {
  Group g;
  for (int pe = 0; pe < 2; ++pe)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        std::vector<int> p = {0, 1, 2, 3};
        int s = 1;
        if (a) { std::swap(p[0], p[1]); s = -s; }
        if (b) { std::swap(p[2], p[3]); s = -s; }
        if (pe) p = {p[2], p[3], p[0], p[1]};
        g.push_back({p, s});
      }
  return g;
}

const Group kId0 = {{{}, 1}};
const Group kId1 = {{{0}, 1}};
const Group kSym2 = {{{0, 1}, 1}, {{1, 0}, 1}};
const Group kAnti2 = {{{0, 1}, 1}, {{1, 0}, -1}};
const Group kCotton = {{{0, 1, 2}, 1}, {{0, 2, 1}, -1}};

std::vector<std::pair<int, int>> all_pairs(int n) {
  std::vector<std::pair<int, int>> v;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) v.push_back({i, j});
  return v;
}

std::vector<SymInfo> build_table() {
  std::vector<SymInfo> t(NSYM);
  auto B = Theory::Boundary;
  auto S = Theory::Spacetime;
  t[G] = {"g", "g", "g", B, 2, false, kSym2, {}, {0, 0}};
  t[W] = {"W", "W", "\\hat{W}", B, 4, false, riemann_group(), all_pairs(4), {0, 0, 0, 0}};
  t[C] = {"C", "C", "\\hat{C}", B, 3, false, kCotton, all_pairs(3), {0, 1, 1}};
  t[TT] = {"T", "T", "\\mathcal{T}", B, 2, false, kSym2, {{0, 1}}, {0, 0}};
  t[F] = {"F", "F", "\\hat{F}", B, 2, true, kAnti2, {{0, 1}}, {0, 0}};
  t[JJ] = {"J", "J", "\\mathcal{J}", B, 1, true, kId1, {}, {0}};
  t[PHI] = {"phi", "phi", "\\hat{\\phi}", B, 0, false, kId0, {}, {}};
  t[PSI] = {"psi", "psi", "\\psi", B, 0, false, kId0, {}, {}};
  t[SW] = {"Wg", "W", "W", S, 4, false, riemann_group(), all_pairs(4), {0, 0, 0, 0}};
  t[SP] = {"P", "P", "P", S, 2, false, kSym2, {}, {0, 0}};
  t[SF] = {"Fg", "F", "F", S, 2, true, kAnti2, {{0, 1}}, {0, 0}};
  t[SJ] = {"Jg", "J", "\\mathbf{J}", S, 1, true, kId1, {}, {0}};
  t[ST] = {"Tg", "T", "\\mathbf{T}", S, 2, false, kSym2, {{0, 1}}, {0, 0}};
  t[SPHI] = {"phig", "phi", "\\phi", S, 0, false, kId0, {}, {}};
  t[SPSI] = {"psig", "psi", "\\psi", S, 0, false, kId0, {}, {}};
  t[LAM] = {"lam", "lam", "\\bar{\\lambda}", S, 0, false, kId0, {}, {}};
  return t;
}

const std::vector<SymInfo>& table() {
  static const std::vector<SymInfo> t = build_table();
  return t;
}

}  // namespace

const SymInfo& sym_info(int s) { return table().at(s); }

int sym_by_unique_name(std::string_view name) {
  const auto& t = table();
  for (int s = 0; s < NSYM; ++s)
    if (t[s].name == name) return s;
  return -1;
}

int sym_by_name(std::string_view name, Theory th) {
  const auto& t = table();
  for (int s = 0; s < NSYM; ++s)
    if (t[s].alias == name && (t[s].theory == th || s == G)) return s;
  for (int s = 0; s < NSYM; ++s)
    if (t[s].name == name) return s;
  return -1;
}

int Ctx::nstar() const {
  Rat n = 2 * w + d;
  if (n.get_den() != 1) throw std::domain_error("2w + d must be an integer");
  return (int)n.get_num().get_si();
}

Rat base_weight(int sym, const Ctx& ctx) {
  switch (sym) {
    case G: return 2;
    case W: return 2;
    case C: return 0;
    case TT: return -(ctx.D() - 3);
    case F: return 0;
    case JJ: return -(ctx.D() - 3);
    case PHI: return ctx.w;
    case PSI: return ctx.w - ctx.nstar();
    default: throw std::domain_error("weight undefined for Levi-Civita symbols");
  }
}

Rat weight_of_term(const Term& t, const Ctx& ctx) {
  Rat w = 0;
  auto add = [&](const Factor& f) {
    w += base_weight(f.sym, ctx);
    for (int i = 0; i < f.n; ++i)
      if (f.ix[i].up) w -= 2;
  };
  for (const auto& f : t.fac) add(f);
  for (const auto& f : t.word) add(f);
  return w;
}

Weight weight_of(const Expr& e, const Ctx& ctx) {
  Weight w;
  if (e.empty()) {
    w.zero = true;
    return w;
  }
  w.value = weight_of_term(e[0], ctx);
  for (size_t i = 1; i < e.size(); ++i)
    if (weight_of_term(e[i], ctx) != w.value) w.offending.push_back(i);
  return w;
}

Expr operator+(const Expr& a, const Expr& b) {
  Expr r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Expr operator-(const Expr& a) {
  Expr r = a;
  for (auto& t : r) t.c = -t.c;
  return r;
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Rat& r, const Expr& a) {
  if (r == 0) return {};
  Expr out = a;
  for (auto& t : out) t.c *= r;
  return out;
}

Expr lam_times(int k, const Expr& a) {
  Expr out = a;
  for (auto& t : out) t.lam += k;
  return out;
}

void append(Expr& a, const Expr& b) { a.insert(a.end(), b.begin(), b.end()); }

void append_scaled(Expr& a, const Expr& b, const Rat& r) {
  if (r == 0) return;
  for (const auto& t : b) {
    a.push_back(t);
    a.back().c *= r;
  }
}

Term mul_raw(const Term& a, const Term& b) {
  Term t;
  t.c = a.c * b.c;
  t.lam = a.lam + b.lam;
  t.fac = a.fac;
  t.fac.insert(t.fac.end(), b.fac.begin(), b.fac.end());
  t.word = a.word;
  t.word.insert(t.word.end(), b.word.begin(), b.word.end());
  return t;
}

int max_id(const Term& t) {
  int m = -1;
  for_each_index(t, [&](const Idx& i) { m = std::max(m, (int)i.id); });
  return m;
}

int max_id(const Expr& e) {
  int m = -1;
  for (const auto& t : e) m = std::max(m, max_id(t));
  return m;
}

int max_dummy(const Term& t) {
  int m = kDummyBase - 1;
  for_each_index(t, [&](const Idx& i) {
    if (is_dummy(i.id)) m = std::max(m, (int)i.id);
  });
  return m;
}

int max_dummy(const Expr& e) {
  int m = kDummyBase - 1;
  for (const auto& t : e) m = std::max(m, max_dummy(t));
  return m;
}

void shift_dummies(Term& t, int base) {
  for_each_index(t, [&](Idx& i) {
    if (is_dummy(i.id)) i.id = (int16_t)(i.id - kDummyBase + base);
  });
}

void mark_contractions(Term& t) {
  std::map<int, int> count;
  for_each_index(t, [&](const Idx& i) { ++count[i.id]; });
  int next = max_dummy(t) + 1;
  std::map<int, int> ren;
  for (auto& [id, n] : count) {
    if (n > 2) throw std::logic_error("index " + std::to_string(id) + " occurs more than twice");
    if (n == 2 && !is_dummy(id)) ren[id] = next++;
  }
  if (ren.empty()) return;
  for_each_index(t, [&](Idx& i) {
    auto it = ren.find(i.id);
    if (it != ren.end()) i.id = (int16_t)it->second;
  });
}

Term mul(const Term& a, const Term& b) {
  Term bb = b;
  shift_dummies(bb, max_dummy(a) + 1);
  Term t = mul_raw(a, bb);
  mark_contractions(t);
  return t;
}

Expr mul(const Expr& a, const Expr& b) {
  Expr r;
  r.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) r.push_back(mul(x, y));
  return r;
}

Expr mul_raw(const Expr& a, const Expr& b) {
  Expr r;
  r.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) r.push_back(mul_raw(x, y));
  return r;
}

Expr instantiate(const Expr& tmpl, const std::vector<Idx>& targets, int base) {
  Expr out = tmpl;
  for (auto& t : out) {
    for_each_index(t, [&](Idx& i) {
      if (is_dummy(i.id)) {
        i.id = (int16_t)(i.id - kDummyBase + base);
      } else {
        if (i.id < 0 || i.id >= (int)targets.size())
          throw std::logic_error("template index out of range");
        i = targets[i.id];
      }
    });
  }
  return out;
}

std::vector<int> free_ids(const Term& t) {
  std::map<int, int> count;
  for_each_index(t, [&](const Idx& i) { ++count[i.id]; });
  std::vector<int> v;
  for (auto& [id, n] : count)
    if (n == 1) v.push_back(id);
  return v;
}

Expr scalar(const Rat& r, int lam) {
  if (r == 0) return {};
  Term t;
  t.c = r;
  t.lam = lam;
  return {t};
}

Expr single(const Factor& f, const Rat& c, int lam) {
  Term t;
  t.c = c;
  t.lam = lam;
  if (sym_info(f.sym).lie)
    t.word.push_back(f);
  else
    t.fac.push_back(f);
  return {t};
}

}  // namespace bcalc
