#include "bcalc/pullback.hpp"

#include <stdexcept>

#include "bcalc/canon.hpp"

namespace bcalc {

namespace {

Expr base_map(const Factor& f) {
  std::vector<Idx> s(f.ix.begin(), f.ix.begin() + f.n);
  switch (f.sym) {
    case G:
      return single(f);
    case W:
      return single(make_factor(SW, s));
    case F:
      return single(make_factor(SF, s));
    case TT:
      return single(make_factor(ST, s));
    case JJ:
      return single(make_factor(SJ, s));
    case PHI:
      return single(make_factor(SPHI, s));
    case PSI:
      return single(make_factor(SPSI, s));
    case C: {
      Expr r = nabla(single(make_factor(SP, {s[0], s[1]})), s[2]);
      append_scaled(r, nabla(single(make_factor(SP, {s[0], s[2]})), s[1]), -1);
      return r;
    }
  }
  throw std::logic_error(std::string("no pullback for symbol ") + std::string(sym_info(f.sym).name));
}

// The shape of a factor: symbol, derivative count and variances, with the
// indices renamed to their positions.
Factor shape_of(const Factor& f) {
  Factor s = f;
  for (int i = 0; i < f.n; ++i) s.ix[i] = Idx{(int16_t)i, f.ix[i].up};
  return s;
}

std::string shape_key(const Factor& s) {
  std::string k(1, (char)('A' + s.sym));
  k += (char)('0' + s.nder);
  for (int i = 0; i < s.n; ++i) k += s.ix[i].up ? '^' : '_';
  return k;
}

}  // namespace

const Expr& Pullback::factor_template(const Factor& shape) {
  std::string key = shape_key(shape);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  Expr out;
  if (shape.nder == 0) {
    out = base_map(shape);
  } else {
    // peel the outermost derivative
    Idx a = shape.ix[0];
    Factor h = shape;
    for (int i = 1; i < shape.n; ++i) h.ix[i - 1] = shape.ix[i];
    h.n--;
    h.nder--;
    out = nabla((*this)(single(h)), a);
    const int u = kDummyBase;
    Expr g = gamma_factor(h, up(u), tab_, u + 1);
    Expr pg = (*this)(g);
    append(out, mul_raw(single(make_factor(SP, {a, lo(u)})), pg));
  }
  out = canonical(out, d_);
  return memo_[key] = std::move(out);
}

Expr Pullback::operator()(const Expr& e) {
  Expr out;
  for (const auto& t : e) {
    int base = std::max(max_id(t) + 1, kDummyBase);
    Expr acc = scalar(t.c, t.lam);
    auto take = [&](const Factor& f) {
      std::vector<Idx> targets(f.ix.begin(), f.ix.begin() + f.n);
      Expr p = instantiate(factor_template(shape_of(f)), targets, base);
      base = std::max(base, max_id(p) + 1);
      acc = mul_raw(acc, p);
    };
    for (const auto& f : t.fac) take(f);
    for (const auto& f : t.word) take(f);
    append(out, acc);
  }
  return out;
}

}  // namespace bcalc
