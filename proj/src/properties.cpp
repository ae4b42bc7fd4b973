#include "bcalc/properties.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>

#include "bcalc/calculus.hpp"
#include "bcalc/canon.hpp"
#include "bcalc/derivation.hpp"
#include "bcalc/random_expr.hpp"
#include "bcalc/reduce.hpp"
#include "bcalc/spacetime.hpp"
#include "bcalc/text.hpp"

namespace bcalc {

namespace {

using Clock = std::chrono::steady_clock;

int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Runs body(k) for k < n; body returns an empty string on success, a
// description otherwise, and sets nontrivial when the case was not vacuous.
PropertyResult run(const std::string& name, int n, const std::function<std::string(int, bool&)>& body) {
  PropertyResult r;
  r.name = name;
  auto t0 = Clock::now();
  for (int k = 0; k < n; ++k) {
    bool nontrivial = false;
    std::string err;
    try {
      err = body(k, nontrivial);
    } catch (const std::exception& e) {
      err = std::string("exception: ") + e.what();
    }
    ++r.cases;
    r.nontrivial += nontrivial;
    if (!err.empty()) {
      if (r.failures == 0) r.first_failure = "case " + std::to_string(k) + ": " + err;
      ++r.failures;
    }
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

bool same_terms(const Expr& a, const Expr& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].c != b[i].c || term_key(a[i]) != term_key(b[i])) return false;
  return true;
}

RandomExprOptions random_options(std::mt19937_64& rng, Theory th) {
  RandomExprOptions o;
  o.theory = th;
  int nfree = pick(rng, 0, 2);
  for (int k = 0; k < nfree; ++k) o.free.push_back(Idx{(int16_t)k, (bool)pick(rng, 0, 1)});
  return o;
}

std::vector<std::string> names_for(Theory th) { return letters(th == Theory::Boundary ? "ABCD" : "abcd"); }

// Renames dummies, shuffles commuting factors and terms, splits coefficients.
Expr scramble(std::mt19937_64& rng, const Expr& e) {
  Expr out;
  for (Term t : e) {
    std::map<int, int> ren;
    std::vector<int> ids;
    for_each_index(t, [&](const Idx& i) {
      if (is_dummy(i.id) && !ren.count(i.id)) {
        ren[i.id] = 0;
        ids.push_back(i.id);
      }
    });
    std::vector<int> fresh(ids.size());
    for (size_t k = 0; k < fresh.size(); ++k) fresh[k] = kDummyBase + 50 + (int)k;
    std::shuffle(fresh.begin(), fresh.end(), rng);
    for (size_t k = 0; k < ids.size(); ++k) ren[ids[k]] = fresh[k];
    for_each_index(t, [&](Idx& i) {
      if (is_dummy(i.id)) i.id = (int16_t)ren[i.id];
    });
    std::shuffle(t.fac.begin(), t.fac.end(), rng);
    if (pick(rng, 0, 2) == 0) {
      Term u = t;
      Rat part(pick(rng, -5, 5), pick(rng, 1, 4));
      part.canonicalize();
      u.c = part;
      t.c -= part;
      out.push_back(u);
    }
    out.push_back(t);
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

std::string verdict_failure(const char* what, Reducer& R, Verdict v, const std::vector<std::string>& names) {
  return std::string(what) + " " + verdict_name(v) + ", residual " + to_text(R.residual(), names).substr(0, 300);
}

struct PoolEntry {
  std::string name;
  Expr e;
  Calculus* calc;
  bool has_expect;
  Rat expect;
};

int op_shift(const OpTerm& o) {
  switch (o.kind) {
    case OpTerm::Nabla:
      return o.i1.up ? -2 : 0;
    case OpTerm::Gamma:
      return o.i1.up ? 0 : 2;
    default:
      return 0;
  }
}

std::vector<PoolEntry> table_pool() {
  std::vector<PoolEntry> pool;
  for (int d = 4; d <= 8; ++d) {
    const int D = d + 1;
    std::vector<std::pair<std::string, Calculus*>> cs{{"gravity", &calculus_for(Output::Obstruction, d)},
                                                      {"ym", &calculus_for(Output::YMEquation, d)}};
    std::vector<Rat> ws{Rat(1)};
    for (int ell = 1; ell <= 3; ++ell) ws.push_back(Rat(2 * ell - d, 2));
    for (auto& w : ws) {
      w.canonicalize();
      cs.push_back({"scalar w=" + w.get_str(), &scalar_calculus(d, w)});
    }
    for (auto& [sector, c] : cs) {
      std::string tag = " d=" + std::to_string(d) + " " + sector;
      auto add = [&](std::string name, const Expr& e, bool has, Rat x) {
        pool.push_back({name + tag, e, c, has, x});
      };
      for (int N = 0; N <= D - 3; ++N) add("T" + std::to_string(N), c->T(N), true, -N);
      for (int N = 0; N <= D - 4; ++N) add("Jg" + std::to_string(N), c->Jg(N), true, 1 - N);
      for (int N = 0; N <= D - 4; ++N) {
        int k = 0;
        for (const auto& o : c->Dop(N).ops)
          add("D" + std::to_string(N) + "." + std::to_string(k++), o.coeff, true, -N - op_shift(o));
      }
      add("Gamma T", c->gammaT(), true, 5 - D);
      if (c->ym()) {
        for (int N = 0; N <= D - 5; ++N) add("F" + std::to_string(N), c->FY(N), true, -N);
        for (int N = 0; N <= D - 4; ++N) add("JY" + std::to_string(N), c->JY(N), true, -(N + 1));
        add("Gamma J", c->gammaJ(), true, 5 - D);
        add("Y_B", c->YB(), false, 0);
        add("Y", c->Y0(), false, 0);
      } else if (c->scalar()) {
        const Rat w = c->ctx().w;
        for (int N = 0; N <= c->nstar(); ++N) add("phi" + std::to_string(N), c->phi(N), true, w - N);
        add("Gamma psi", c->gammaPsi(), true, w - c->nstar() + 2);
        add("P", c->gjms(), false, 0);
      } else {
        add("O_AB", c->O2(), false, 0);
        add("O_A", c->O1(), false, 0);
      }
    }
  }
  return pool;
}

}  // namespace

PropertyResult prop_canonical(uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  return run("canonicalize idempotence", n, [&](int, bool& nt) -> std::string {
    Theory th = pick(rng, 0, 1) ? Theory::Boundary : Theory::Spacetime;
    int d = pick(rng, 4, 8);
    Expr e = random_expr(rng, random_options(rng, th));
    Expr c1 = canonical(e, d);
    nt = !c1.empty();
    if (!same_terms(canonical(c1, d), c1)) return "not idempotent: " + to_text(c1, names_for(th));
    if (!same_terms(canonical(scramble(rng, c1), d), c1))
      return "not invariant under relabeling: " + to_text(c1, names_for(th));
    return {};
  });
}

PropertyResult prop_round_trip(uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  return run("JSON and text round-trip", n, [&](int, bool& nt) -> std::string {
    Theory th = pick(rng, 0, 1) ? Theory::Boundary : Theory::Spacetime;
    int d = pick(rng, 4, 8);
    auto names = names_for(th);
    Expr c = canonical(random_expr(rng, random_options(rng, th)), d);
    nt = !c.empty();
    ParseEnv env;
    env.theory = th;
    env.free_names = names;
    std::string dumped = to_json(c, names).dump();
    Expr back = canonical(from_json(nlohmann::json::parse(dumped), env), d);
    if (!same_terms(back, c)) return "JSON changed " + to_text(c, names) + " into " + to_text(back, names);
    std::string text = to_text(c, names);
    Expr parsed = canonical(parse_expr(text, env), d);
    if (!same_terms(parsed, c)) return "text changed " + text + " into " + to_text(parsed, names);
    return {};
  });
}

namespace {

Expr small_random(std::mt19937_64& rng) {
  RandomExprOptions o;
  o.max_terms = 1;
  o.max_factors = 2;
  o.max_derivs = 1;
  if (pick(rng, 0, 1)) o.free = {Idx{0, (bool)pick(rng, 0, 1)}};
  return random_expr(rng, o);
}

}  // namespace

PropertyResult prop_commutators(uint64_t seed, int n, int d) {
  std::mt19937_64 rng(seed);
  GammaTables tab = full_tables(d, 1);
  return run("commutation relations d=" + std::to_string(d), n, [&](int, bool& nt) -> std::string {
    Expr e = small_random(rng);
    Deriv X = random_deriv(rng, 10, 11), Y = random_deriv(rng, 12, 13);
    Expr comp = apply(X, apply(Y, e, tab), tab) - apply(Y, apply(X, e, tab), tab);
    nt = !canonical(comp, d).empty();
    Expr r = canonical(comp - commutator(X, Y, e, tab), d);
    if (r.empty()) return {};
    Reducer R(Theory::Boundary, d, &tab);
    Verdict v = R.zero(r);
    if (v == Verdict::Equal) return {};
    return verdict_failure(("[" + deriv_name(X) + ", " + deriv_name(Y) + "]").c_str(), R, v, letters("A"));
  });
}

PropertyResult prop_jacobi(uint64_t seed, int n, int d) {
  std::mt19937_64 rng(seed);
  GammaTables tab = full_tables(d, 1);
  return run("Jacobi identity d=" + std::to_string(d), n, [&](int, bool& nt) -> std::string {
    Expr e = small_random(rng);
    Deriv X = random_deriv(rng, 10, 11), Y = random_deriv(rng, 12, 13), Z = random_deriv(rng, 14, 15);
    Expr j = canonical(jacobiator(X, Y, Z, e, tab), d);
    if (j.empty()) return {};
    nt = true;
    Reducer R(Theory::Boundary, d, &tab);
    Verdict v = R.zero(j);
    if (v == Verdict::Equal) return {};
    return verdict_failure((deriv_name(X) + " " + deriv_name(Y) + " " + deriv_name(Z)).c_str(), R, v, letters("A"));
  });
}

PropertyResult prop_table_weights() {
  auto t0 = Clock::now();
  std::vector<PoolEntry> pool = table_pool();
  auto r = run("weight homogeneity of table entries", (int)pool.size(), [&](int k, bool& nt) -> std::string {
    const auto& p = pool[k];
    Weight w = weight_of(p.e, p.calc->ctx());
    nt = !w.zero;
    if (w.zero) return {};
    if (!w.homogeneous()) return p.name + " is not homogeneous";
    if (p.has_expect && w.value != p.expect)
      return p.name + " has weight " + w.value.get_str() + ", expected " + p.expect.get_str();
    return {};
  });
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

PropertyResult prop_derivation_weights(uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::vector<PoolEntry> pool;
  for (auto& p : table_pool())
    if (!canonical(p.e, p.calc->d()).empty()) pool.push_back(std::move(p));
  return run("weight shift of derivations on table entries", n, [&](int, bool& nt) -> std::string {
    const auto& p = pool[pick(rng, 0, (int)pool.size() - 1)];
    Deriv X = random_deriv(rng, 10, 11);
    const Ctx& ctx = p.calc->ctx();
    Weight w0 = weight_of(p.e, ctx);
    Expr out = canonical(apply(X, p.e, p.calc->tables()), p.calc->d());
    Weight w = weight_of(out, ctx);
    nt = !w.zero;
    if (w.zero) return {};
    Rat want = w0.value + weight_shift(X);
    if (!w.homogeneous()) return deriv_name(X) + " " + p.name + " is not homogeneous";
    if (w.value != want)
      return deriv_name(X) + " " + p.name + " has weight " + w.value.get_str() + ", expected " + want.get_str();
    return {};
  });
}

std::vector<PropertyResult> run_properties(uint64_t seed, int n) {
  std::vector<PropertyResult> rs;
  rs.push_back(prop_canonical(seed, n));
  rs.push_back(prop_round_trip(seed + 1, n));
  rs.push_back(prop_commutators(seed + 2, n, 4));
  rs.push_back(prop_commutators(seed + 3, n, 5));
  rs.push_back(prop_jacobi(seed + 4, n, 4));
  rs.push_back(prop_jacobi(seed + 5, n, 5));
  rs.push_back(prop_table_weights());
  rs.push_back(prop_derivation_weights(seed + 6, n));
  return rs;
}

}  // namespace bcalc
