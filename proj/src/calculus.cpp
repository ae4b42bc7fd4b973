#include "bcalc/calculus.hpp"

#include <stdexcept>

#include "bcalc/canon.hpp"

namespace bcalc {

mpz_class binom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), (unsigned long)n, (unsigned long)k);
  return r;
}

mpz_class dcoef(int i, int N) { return binom(N, i) * (N - 1 - i); }

namespace {

template <class Fn>
Expr relabel(const Expr& e, Fn&& fn) {
  Expr out = e;
  for (auto& t : out) for_each_index(t, [&](Idx& i) { i = fn(i); });
  return out;
}

Expr inst(const Expr& tmpl, std::vector<Idx> targets) {
  return instantiate(tmpl, targets, kDummyBase);
}

void normalize_op(OpTerm& op, int d) {
  std::map<int, int> ren;
  int next = 1;
  for (Idx* x : {&op.i1, &op.i2}) {
    if (op.kind != OpTerm::GL && x == &op.i2) break;
    if (is_dummy(x->id) && !ren.count(x->id)) ren[x->id] = next++;
  }
  auto fn = [&](Idx i) {
    auto it = ren.find(i.id);
    if (it != ren.end()) i.id = (int16_t)it->second;
    return i;
  };
  op.coeff = canonical(relabel(op.coeff, fn), d);
  op.i1 = fn(op.i1);
  op.i2 = fn(op.i2);
}

bool same_op(const OpTerm& a, const OpTerm& b) {
  return a.kind == b.kind && a.i1 == b.i1 && (a.kind != OpTerm::GL || a.i2 == b.i2);
}

void add_op(DOp& out, OpTerm op, int d) {
  normalize_op(op, d);
  if (op.coeff.empty()) return;
  for (auto& o : out.ops)
    if (same_op(o, op)) {
      o.coeff = canonical(o.coeff + op.coeff, d);
      return;
    }
  out.ops.push_back(std::move(op));
}

}  // namespace

Calculus::Calculus(const CalcOptions& o) : opt_(o) {
  if (o.d < 4) throw std::domain_error("boundary dimension below 4 is not supported");
  tab_.ctx.d = o.d;
  tab_.ctx.w = o.w;
  tab_.gT = gammaT_formula(D() - 3);
  tab_.gT = canonical(tab_.gT, o.d);
  tab_.has_T = true;
  if (o.ym) {
    tab_.gJ = canonical(gammaJ_formula(D() - 4), o.d);
    tab_.has_J = true;
  }
  if (o.scalar) {
    int ns = nstar();
    if (ns < 1) throw std::domain_error("2w + d must be positive");
    Expr g;
    for (int i = 0; i <= ns - 2; ++i) {
      const Expr& p = phi(i);
      if (p.empty()) continue;
      append_scaled(g, D(ns - 2 - i, lo(0), p), Rat(dcoef(i, ns)));
    }
    tab_.gPsi = canonical(lam_times(1, g), o.d);
    tab_.has_psi = true;
  }
}

int Calculus::nstar() const { return tab_.ctx.nstar(); }

const Expr& Calculus::T(int N) {
  auto it = T_.find(N);
  if (it != T_.end()) return it->second;
  Expr v = tower_T(N);
  return T_[N] = canonical(v, opt_.d);
}

const Expr& Calculus::Jg(int N) {
  auto it = J_.find(N);
  if (it != J_.end()) return it->second;
  Expr v = tower_J(N);
  return J_[N] = canonical(v, opt_.d);
}

const Expr& Calculus::FY(int N) {
  auto it = FY_.find(N);
  if (it != FY_.end()) return it->second;
  Expr v = tower_FY(N);
  return FY_[N] = canonical(v, opt_.d);
}

const Expr& Calculus::JY(int N) {
  auto it = JY_.find(N);
  if (it != JY_.end()) return it->second;
  Expr v = tower_JY(N);
  return JY_[N] = canonical(v, opt_.d);
}

const Expr& Calculus::phi(int N) {
  auto it = phi_.find(N);
  if (it != phi_.end()) return it->second;
  Expr v = tower_phi(N);
  return phi_[N] = canonical(v, opt_.d);
}

const DOp& Calculus::Dop(int N) {
  auto it = D_.find(N);
  if (it != D_.end()) return it->second;
  DOp v = build_D(N);
  return D_[N] = std::move(v);
}

Expr Calculus::tower_T(int N) {
  if (N <= 0) return {};
  if (N == D() - 3) return single(make_factor(TT, {lo(0), lo(1)}));
  Expr s;
  for (int i = 0; i <= N - 1; ++i) {
    const Expr& j = Jg(i);
    if (j.empty()) continue;
    append_scaled(s, D(N - 1 - i, up(20), inst(j, {lo(20), lo(0), lo(1)})), Rat(binom(N - 1, i)));
  }
  return lam_times(1, frac(N, D() - 3 - N) * s);
}

Expr Calculus::tower_J(int N) {
  if (N <= 0) return {};
  if (N == 1) return single(make_factor(C, {lo(2), lo(0), lo(1)}), -1, 1);
  Expr s;
  for (int i = 0; i <= N - 1; ++i) {
    const Expr& t = T(i);
    if (t.empty()) continue;
    Rat b(binom(N - 1, i));
    append_scaled(s, D(N - 1 - i, lo(0), inst(t, {lo(1), lo(2)})), b);
    append_scaled(s, D(N - 1 - i, lo(1), inst(t, {lo(0), lo(2)})), -b);
  }
  return frac(N, N - 1) * s;
}

Expr Calculus::tower_FY(int N) {
  if (!opt_.ym) throw std::logic_error("gauge sector not enabled");
  if (N < 0) return {};
  if (N == 0) return single(make_factor(F, {lo(0), lo(1)}));
  Expr s;
  for (int i = 0; i <= N - 1; ++i) {
    const Expr& j = JY(i);
    if (j.empty()) continue;
    Rat b(binom(N - 1, i));
    append_scaled(s, D(N - 1 - i, lo(0), inst(j, {lo(1)})), b);
    append_scaled(s, D(N - 1 - i, lo(1), inst(j, {lo(0)})), -b);
  }
  return s;
}

Expr Calculus::tower_JY(int N) {
  if (!opt_.ym) throw std::logic_error("gauge sector not enabled");
  if (N <= 0) return {};
  if (N == D() - 4) return single(make_factor(JJ, {lo(0)}));
  Expr s;
  for (int i = 0; i <= N - 1; ++i) {
    const Expr& f = FY(i);
    if (f.empty()) continue;
    append_scaled(s, D(N - 1 - i, up(20), inst(f, {lo(20), lo(0)})), Rat(binom(N - 1, i)));
  }
  return lam_times(1, frac(N, D() - 4 - N) * s);
}

Expr Calculus::omega_laplacian(int n) {
  auto it = omega_lap_.find(n);
  if (it != omega_lap_.end()) return it->second;
  Expr s;
  for (int i = 0; i <= n; ++i) {
    Expr v;
    for (int j = 0; j <= i; ++j) {
      const Expr& p = phi(j);
      if (p.empty()) continue;
      append_scaled(v, D(i - j, up(21), p), Rat(binom(i, j)));
    }
    v = canonical(v, opt_.d);
    if (v.empty()) continue;
    append_scaled(s, D(n - i, lo(21), v), Rat(binom(n, i)));
  }
  return omega_lap_[n] = canonical(s, opt_.d);
}

Expr Calculus::tower_phi(int N) {
  if (!opt_.scalar) throw std::logic_error("scalar sector not enabled");
  if (N < 0) return {};
  if (N == 0) return single(make_factor(PHI, {}));
  int ns = nstar();
  if (N == ns) return single(make_factor(PSI, {}));
  if (N == 1) return {};
  Rat c = -2 * opt_.w - opt_.d + N;
  return lam_times(1, Rat(-(N - 1)) / c * omega_laplacian(N - 2));
}

DOp Calculus::build_D(int N) {
  DOp out;
  const int d = opt_.d;
  if (N == 0) {
    out.ops.push_back({OpTerm::Nabla, bcalc::scalar(1), lo(0), {}});
    return out;
  }
  if (N < 0) return out;
  const Expr& jm = Jg(N - 1);
  if (!jm.empty()) {
    OpTerm op{OpTerm::GL, -instantiate(jm, {up(1001), lo(1000), lo(0)}, 1002), up(1000), lo(1001)};
    add_op(out, std::move(op), d);
  }
  const Expr& tn = T(N);
  if (!tn.empty()) {
    Expr cf = lam_times(-1, frac(1, N) * instantiate(tn, {lo(1000), lo(0)}, 1001));
    add_op(out, {OpTerm::Gamma, cf, up(1000), {}}, d);
  }
  if (opt_.ym) {
    const Expr& jy = JY(N - 1);
    if (!jy.empty()) add_op(out, {OpTerm::Bracket, inst(jy, {lo(0)}), {}, {}}, d);
  }
  for (int i = 1; i <= N - 2; ++i) {
    const Expr& ti = T(i);
    if (ti.empty()) continue;
    const DOp& sub = Dop(N - 2 - i);
    if (sub.zero()) continue;
    Rat fac = -Rat(dcoef(i, N)) / N;
    for (const auto& so : sub.ops) {
      auto mp = [&](Idx x) {
        if (x.id == 0) return lo(1000);
        if (x.id == 1 || x.id == 2) return Idx{(int16_t)(1000 + x.id), x.up};
        if (is_dummy(x.id)) return Idx{(int16_t)(x.id + 3), x.up};
        return x;
      };
      Expr sc = relabel(so.coeff, mp);
      Expr tp = instantiate(ti, {up(1000), lo(0)}, std::max(max_id(sc) + 1, 1003));
      OpTerm op{so.kind, fac * mul_raw(tp, sc), mp(so.i1), mp(so.i2)};
      add_op(out, std::move(op), d);
    }
  }
  return out;
}

Expr Calculus::apply_op(const OpTerm& op, Idx A, const Expr& f) const {
  int base = std::max({max_id(f), (int)A.id, kDummyBase - 1}) + 1;
  auto mp_idx = [&](Idx x) {
    if (x.id == 0) return A;
    if (x.id == 1) return Idx{(int16_t)base, x.up};
    if (x.id == 2) return Idx{(int16_t)(base + 1), x.up};
    return x;
  };
  Idx i1 = mp_idx(op.i1), i2 = mp_idx(op.i2);
  Expr R;
  switch (op.kind) {
    case OpTerm::Nabla: R = nabla(f, i1); break;
    case OpTerm::Gamma: R = gamma(f, i1, tab_); break;
    case OpTerm::GL: R = gl(f, i1, i2); break;
    case OpTerm::Bracket: {
      Expr L = relabel(op.coeff, [&](Idx x) {
        if (x.id == 0) return A;
        if (is_dummy(x.id)) return Idx{(int16_t)(x.id - kDummyBase + base + 2), x.up};
        return x;
      });
      return bracket(L, f);
    }
  }
  if (R.empty()) return {};
  int base2 = std::max(max_id(R), base + 1) + 1;
  Expr cf = relabel(op.coeff, [&](Idx x) {
    if (is_dummy(x.id)) return Idx{(int16_t)(x.id - kDummyBase + base2), x.up};
    return mp_idx(x);
  });
  return mul_raw(cf, R);
}

Expr Calculus::D(int N, Idx A, const Expr& f) {
  const DOp& op = Dop(N);
  Expr out;
  for (const auto& o : op.ops) append(out, apply_op(o, A, f));
  return out;
}

Expr Calculus::gammaT_formula(int N) {
  Expr s;
  for (int i = 0; i <= N - 2; ++i) {
    const Expr& t = T(i);
    if (t.empty()) continue;
    append_scaled(s, D(N - 2 - i, lo(0), inst(t, {lo(1), lo(2)})), Rat(dcoef(i, N)));
  }
  const Expr& j = Jg(N - 1);
  append_scaled(s, inst(j, {lo(0), lo(1), lo(2)}), N);
  append_scaled(s, inst(j, {lo(0), lo(2), lo(1)}), N);
  return canonical(lam_times(1, s), opt_.d);
}

Expr Calculus::gammaJ_formula(int N) {
  Expr s;
  for (int i = 0; i <= N - 2; ++i) {
    const Expr& j = JY(i);
    if (j.empty()) continue;
    append_scaled(s, D(N - 2 - i, lo(0), inst(j, {lo(1)})), Rat(dcoef(i, N)));
  }
  append_scaled(s, inst(FY(N - 1), {lo(0), lo(1)}), N);
  return canonical(lam_times(1, s), opt_.d);
}

Expr Calculus::O2() {
  const int n = D() - 4;
  Expr s;
  for (int i = 0; i <= n; ++i) {
    const Expr& j = Jg(i);
    if (j.empty()) continue;
    append_scaled(s, D(n - i, up(20), inst(j, {lo(20), lo(0), lo(1)})), Rat(binom(n, i)));
  }
  return canonical(s, opt_.d);
}

Expr Calculus::O1() {
  const int n = D() - 3;
  Expr s;
  for (int i = 1; i <= n; ++i) {
    const Expr& t = T(i);
    if (t.empty()) continue;
    append_scaled(s, D(n - i, up(20), inst(t, {lo(0), lo(20)})), Rat(binom(n, i)));
  }
  return canonical(s, opt_.d);
}

Expr Calculus::YB() {
  const int n = D() - 5;
  Expr s;
  for (int i = 0; i <= n; ++i) {
    const Expr& f = FY(i);
    if (f.empty()) continue;
    append_scaled(s, D(n - i, up(20), inst(f, {lo(20), lo(0)})), Rat(binom(n, i)));
  }
  return canonical(s, opt_.d);
}

Expr Calculus::Y0() {
  const int n = D() - 4;
  Expr s;
  for (int i = 0; i <= n; ++i) {
    const Expr& j = JY(i);
    if (j.empty()) continue;
    append_scaled(s, D(n - i, up(20), inst(j, {lo(20)})), Rat(binom(n, i)));
  }
  return canonical(s, opt_.d);
}

Expr Calculus::gjms() { return omega_laplacian(nstar() - 2); }

}  // namespace bcalc
