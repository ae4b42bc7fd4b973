#include "bcalc/numeric.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>

#include "bcalc/canon.hpp"
#include "bcalc/evaluate.hpp"
#include "bcalc/fdoracle.hpp"
#include "bcalc/fixture.hpp"
#include "bcalc/geometry.hpp"
#include "bcalc/spacetime.hpp"

namespace bcalc {

bool NumericReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json NumericReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["lambda"] = lambda;
  j["verdict"] = pass() ? "pass" : "fail";
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json k;
    k["id"] = c.id;
    k["fixture"] = c.fixture;
    k["measure"] = c.measure;
    k["points"] = c.points;
    k["residuals"] = c.residuals;
    k["max_residual"] = c.max_residual;
    k["tolerance"] = c.tolerance;
    k["verdict"] = c.pass ? "pass" : "fail";
    if (!c.note.empty()) k["note"] = c.note;
    j["checks"].push_back(std::move(k));
  }
  return j;
}

namespace {

// Default tolerances: exact-derivative paths, comparisons with the
// finite-difference oracle, and exact zeros.
constexpr double kExact = 1e-8;
constexpr double kEinstein = 1e-9;
constexpr double kOracle = 1e-6;
constexpr double kRounding = 1e-12;
constexpr double kPotential = 1e-10;

struct Run {
  const NumericConfig& cfg;
  NumericReport rep;
  std::map<std::string, Fixture> fx;

  // loads everything first so a bad fixture aborts before any output
  void load(const std::vector<std::string>& names) {
    for (const auto& n : names)
      if (!fx.count(n)) fx.emplace(n, load_fixture(cfg.fixtures_dir + "/" + n + ".fx"));
  }
  bool want(int d) const { return cfg.d == 0 || cfg.d == d; }
  double tol(double def) const { return cfg.tolerance.value_or(def); }

  void check(const std::string& id, const std::string& fixture, const std::string& measure, double tolerance,
             const std::function<double(const Fixture&, const std::vector<double>&)>& fn, const std::string& note = "") {
    const Fixture& f = fx.at(fixture);
    CheckResult c;
    c.id = id;
    c.fixture = f.name;
    c.measure = measure;
    c.tolerance = tol(tolerance);
    c.note = note;
    c.pass = true;
    for (const auto& p : f.points) {
      double r = fn(f, p);
      c.points.push_back(p);
      c.residuals.push_back(r);
      c.max_residual = std::max(c.max_residual, r);
      if (!(r <= c.tolerance)) c.pass = false;
    }
    rep.checks.push_back(std::move(c));
  }
};

NumValue eval_at(const Expr& e, const Fixture& f, const std::vector<double>& p, double lambda) {
  Needs need;
  add_needs(need, e);
  Geometry geo(f, p, need);
  return evaluate(e, geo, lambda);
}

// several expressions on one geometry
std::vector<NumValue> eval_all(const std::vector<const Expr*>& es, const Fixture& f, const std::vector<double>& p,
                               double lambda) {
  Needs need;
  for (const Expr* e : es) add_needs(need, *e);
  Geometry geo(f, p, need);
  std::vector<NumValue> out;
  for (const Expr* e : es) out.push_back(evaluate(*e, geo, lambda));
  return out;
}

Expr parse_st(const std::string& text, const std::string& free) { return parse_expr(text, spacetime_env(free)); }

std::string dstr(int d) { return " d=" + std::to_string(d); }

const Expr& obstruction(int d) { return spacetime_form(Output::Obstruction, d); }

Expr trace_of(const Expr& o, int d) { return canonical(instantiate(o, {up(900), lo(900)}, kDummyBase), d); }

Expr divergence_of(const Expr& o, int d) {
  return canonical(nabla(instantiate(o, {lo(0), lo(1)}, kDummyBase), up(0)), d);
}

Expr ym_equation(int d) { return abelianize(spacetime_form(Output::YMEquation, d), d); }
Expr ym_conservation(int d) { return abelianize(spacetime_form(Output::YMConservation, d), d); }

double rel_vec(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0, s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
    s = std::max({s, std::abs(a[i]), std::abs(b[i])});
  }
  return s > 0 ? m / s : m;
}

// ---------------------------------------------------------------------------

void suite_flat_zeros(Run& r) {
  std::vector<std::string> need;
  for (int d : {4, 6})
    if (r.want(d)) need.push_back("flat" + std::to_string(d));
  r.load(need);
  for (int d : {4, 6}) {
    if (!r.want(d)) continue;
    std::string f = "flat" + std::to_string(d);
    Expr o = obstruction(d);
    r.check("obstruction" + dstr(d), f, "absolute", kRounding,
            [&](const Fixture& fx, const std::vector<double>& p) { return eval_at(o, fx, p, r.cfg.lambda).max_abs(); });
    Expr w = parse_st("W_abcd", "abcd");
    r.check("weyl" + dstr(d), f, "absolute", kRounding,
            [&](const Fixture& fx, const std::vector<double>& p) { return eval_at(w, fx, p, r.cfg.lambda).max_abs(); });
    Expr y = ym_equation(d);
    r.check("ym-equation" + dstr(d), f, "absolute", kRounding,
            [&](const Fixture& fx, const std::vector<double>& p) { return eval_at(y, fx, p, r.cfg.lambda).max_abs(); },
            "flat quadratic Maxwell potential, on shell");
  }
}

void suite_trace_free(Run& r) {
  for (int d : {4, 6}) {
    if (!r.want(d)) continue;
    Expr t = trace_of(obstruction(d), d);
    for (int k = 0; k < 3; ++k) {
      std::string f = "random" + std::to_string(d) + "-" + std::to_string(k);
      r.load({f});
      r.check("obstruction-trace" + dstr(d), f, "relative", kExact,
              [&](const Fixture& fx, const std::vector<double>& p) { return eval_at(t, fx, p, r.cfg.lambda).residual(); },
              t.empty() ? "trace vanishes identically after canonicalization" : "");
    }
  }
}

void suite_div_free(Run& r) {
  for (int d : {4, 6}) {
    if (!r.want(d)) continue;
    Expr v = divergence_of(obstruction(d), d);
    for (int k = 0; k < 3; ++k) {
      std::string f = "random" + std::to_string(d) + "-" + std::to_string(k);
      r.load({f});
      r.check("obstruction-divergence" + dstr(d), f, "relative", kExact,
              [&](const Fixture& fx, const std::vector<double>& p) { return eval_at(v, fx, p, r.cfg.lambda).residual(); });
    }
  }
}

void suite_einstein(Run& r) {
  std::map<int, std::vector<std::string>> fx = {{4, {"s2xs2"}}, {6, {"s2xs4"}}};
  for (auto& [d, names] : fx) {
    if (!r.want(d)) continue;
    r.load(names);
    Expr o = obstruction(d);
    for (const auto& f : names)
      r.check("obstruction" + dstr(d), f, "relative", kEinstein,
              [&](const Fixture& fx, const std::vector<double>& p) { return eval_at(o, fx, p, r.cfg.lambda).residual(); });
  }
}

void suite_bach_covariance(Run& r) {
  if (!r.want(4)) return;
  r.load({"random4-0"});
  const Fixture& base = r.fx.at("random4-0");
  Fixture scaled = base.rescaled();
  Expr o = obstruction(4);
  r.check("bach e^2w g vs e^-2w bach g" + dstr(4), "random4-0", "difference", kExact,
          [&](const Fixture& fx, const std::vector<double>& p) {
            NumValue b1 = eval_at(o, scaled, p, r.cfg.lambda);
            NumValue b0 = eval_at(o, fx, p, r.cfg.lambda);
            auto konst = [](double v) { return v; };
            double w = fx.omega->eval(p, konst);
            for (auto& x : b0.v) x *= std::exp(-2 * w);
            return relative_difference(b1, b0);
          },
          "the rescaled metric is built as its own component formulas");
}

void suite_ym_einstein(Run& r) {
  for (int d : {4, 6}) {
    if (!r.want(d)) continue;
    std::string f = d == 4 ? "sphere4" : "s2xs4";
    r.load({f});
    Expr y = ym_equation(d);
    r.check("ym-equation" + dstr(d), f, "relative", kExact,
            [&](const Fixture& fx, const std::vector<double>& p) { return eval_at(y, fx, p, r.cfg.lambda).residual(); },
            "Einstein metric with an on-shell abelian field");
    if (d == 4) continue;
    Expr c = ym_conservation(d);
    Expr divj = parse_st("n^a J_a", "");
    r.check("ym-conservation vs div J" + dstr(d), f, "difference", kExact,
            [&](const Fixture& fx, const std::vector<double>& p) {
              auto v = eval_all({&c, &divj}, fx, p, r.cfg.lambda);
              return relative_difference(v[0], v[1]);
            });
  }
}

void suite_gjms_flat(Run& r) {
  for (int d = 4; d <= 8; ++d) {
    if (!r.want(d)) continue;
    std::string f = "flat" + std::to_string(d);
    r.load({f});
    for (int ell = 1; 2 * ell < d; ++ell) {
      const Expr& P = spacetime_form(Output::GJMS, d, ell);
      // leading coefficient: the terms built from phi alone
      Expr lead;
      for (const auto& t : P) {
        bool pure = t.word.empty();
        for (const auto& x : t.fac) pure &= x.sym == SPHI || x.sym == G;
        if (pure) lead.push_back(t);
      }
      std::string lap;
      for (int k = 0; k < ell; ++k) lap += std::string("n^") + char('a' + k) + " n_" + char('a' + k) + " ";
      Expr ref = parse_st(lap + "phi", "");
      r.check("gjms l=" + std::to_string(ell) + dstr(d), f, "difference", kExact,
              [&](const Fixture& fx, const std::vector<double>& p) {
                auto v = eval_all({&P, &lead, &ref}, fx, p, r.cfg.lambda);
                NumValue &a = v[0], &c = v[1], &b = v[2];
                // lead = c_l (nabla.nabla)^l phi on flat space; read c_l off the
                // symbolic coefficients
                double cl = 0;
                for (const auto& t : lead) cl += t.c.get_d() * std::pow(r.cfg.lambda, t.lam);
                for (auto& x : b.v) x *= cl;
                return std::max(relative_difference(a, b), relative_difference(c, b));
              },
              "curvilinear coordinates on flat space");
    }
  }
}

void suite_odd_conservation(Run& r) {
  if (!r.want(5)) return;
  r.load({"flat5-potential"});
  Expr o = spacetime_form(Output::Conservation, 5);
  r.check("conservation" + dstr(5), "flat5-potential", "relative", kPotential,
          [&](const Fixture& fx, const std::vector<double>& p) { return eval_at(o, fx, p, r.cfg.lambda).residual(); },
          "T is the Hessian of a harmonic potential");
}

void suite_lambda_scaling(Run& r) {
  struct Item {
    std::string id;
    int d;
    Expr e;
    std::string f;
  };
  std::vector<Item> items;
  for (int d : {4, 6}) {
    if (!r.want(d)) continue;
    std::string f = "random" + std::to_string(d) + "-0";
    items.push_back({"obstruction" + dstr(d), d, obstruction(d), f});
    items.push_back({"ym-equation" + dstr(d), d, ym_equation(d), f});
  }
  if (r.want(5)) items.push_back({"conservation" + dstr(5), 5, spacetime_form(Output::Conservation, 5), "random5-0"});
  for (auto& it : items) {
    r.load({it.f});
    // per-term powers of Lambda: v(s L) = sum_k s^k v_k(L)
    std::map<int, Expr> parts;
    for (const auto& t : it.e) parts[t.lam].push_back(t);
    std::string note = "Lambda powers:";
    for (auto& [k, e] : parts) note += " " + std::to_string(k);
    const double s = 2.5;
    r.check("lambda-scaling " + it.id, it.f, "difference", kExact,
            [&](const Fixture& fx, const std::vector<double>& p) {
              NumValue a = eval_at(it.e, fx, p, s * r.cfg.lambda);
              NumValue b = eval_at(it.e, fx, p, r.cfg.lambda);
              if (parts.size() == 1) {
                for (auto& x : b.v) x *= std::pow(s, parts.begin()->first);
                return relative_difference(a, b);
              }
              // mixed homogeneity: compare with the recombined parts
              NumValue c = b;
              std::fill(c.v.begin(), c.v.end(), 0.0);
              for (auto& [k, e] : parts) {
                NumValue v = eval_at(e, fx, p, r.cfg.lambda);
                for (size_t i = 0; i < c.v.size(); ++i) c.v[i] += std::pow(s, k) * v.v[i];
              }
              return relative_difference(a, c);
            },
            note);
  }
}

void suite_fd_oracle(Run& r) {
  for (int d : {4, 5, 6}) {
    if (!r.want(d)) continue;
    for (int k = 0; k < 3; ++k) {
      std::string f = "random" + std::to_string(d) + "-" + std::to_string(k);
      r.load({f});
      const Fixture& fx = r.fx.at(f);
      // the oracle is slow: one pinned point per metric
      Fixture one = fx;
      one.points.resize(1);
      r.fx[f + "#0"] = one;
      r.check("jets vs finite differences (curvature)" + dstr(d), f + "#0", "difference", kOracle,
              [&](const Fixture& fx, const std::vector<double>& p) {
                Geometry geo(fx, p, {{SP, 1}, {SW, 0}});
                FdCurvature o = fd_curvature(fx, p, 0.05, true, false);
                const int n = fx.dim();
                const auto& dP = geo.tensor(SP, 1);
                std::vector<double> C(n * n * n);
                for (int a = 0; a < n; ++a)
                  for (int b = 0; b < n; ++b)
                    for (int c = 0; c < n; ++c) C[(a * n + b) * n + c] = dP[(c * n + a) * n + b] - dP[(b * n + a) * n + c];
                double m = 0;
                m = std::max(m, rel_vec(geo.christoffel(), o.christoffel));
                m = std::max(m, rel_vec(geo.riemann(), o.riemann));
                m = std::max(m, rel_vec(geo.ricci(), o.ricci));
                m = std::max(m, rel_vec(geo.tensor(SP, 0), o.schouten));
                m = std::max(m, rel_vec(geo.tensor(SW, 0), o.weyl));
                m = std::max(m, rel_vec(C, o.cotton));
                return m;
              },
              "Christoffel, Riemann, Ricci, Schouten, Weyl and Cotton");
      r.rep.checks.back().fixture = fx.name;
    }
  }
  if (r.want(4)) {
    r.load({"random4-0"});
    Fixture one = r.fx.at("random4-0");
    one.points.resize(1);
    r.fx["random4-0#0"] = one;
    Expr bach = parse_st("B_ab", "ab");
    r.check("jets vs finite differences (Bach)" + dstr(4), "random4-0#0", "difference", kOracle,
            [&](const Fixture& fx, const std::vector<double>& p) {
              NumValue b = eval_at(bach, fx, p, r.cfg.lambda);
              FdCurvature o = fd_curvature(fx, p, 0.05, false, true);
              return rel_vec(b.v, o.bach);
            });
    r.rep.checks.back().fixture = one.name;
  }
}

void suite_weyl_conformally_flat(Run& r) {
  for (std::string f : {"confflat4", "confflat6", "sphere4", "sphere5", "sphere6", "sphere7"}) {
    int d = f.back() - '0';
    if (!r.want(d)) continue;
    r.load({f});
    r.check("weyl / riemann" + dstr(d), f, "difference", kRounding, [&](const Fixture& fx, const std::vector<double>& p) {
      Geometry geo(fx, p, {{SW, 0}});
      double w = 0, R = 0;
      for (double x : geo.tensor(SW, 0)) w = std::max(w, std::abs(x));
      for (double x : geo.riemann()) R = std::max(R, std::abs(x));
      return R > 0 ? w / R : w;
    });
  }
}

void suite_riemann_symmetries(Run& r) {
  for (int d : {4, 5, 6}) {
    if (!r.want(d)) continue;
    std::string f = "random" + std::to_string(d) + "-1";
    r.load({f});
    r.check("riemann symmetries" + dstr(d), f, "difference", kRounding, [&](const Fixture& fx, const std::vector<double>& p) {
      Geometry geo(fx, p, {{SP, 0}});
      const int n = fx.dim();
      const auto& R = geo.riemann();
      auto at = [&](int a, int b, int c, int e) { return R[((a * n + b) * n + c) * n + e]; };
      double m = 0, s = 0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            for (int e = 0; e < n; ++e) {
              s = std::max(s, std::abs(at(a, b, c, e)));
              m = std::max(m, std::abs(at(a, b, c, e) + at(b, a, c, e)));
              m = std::max(m, std::abs(at(a, b, c, e) - at(c, e, a, b)));
              m = std::max(m, std::abs(at(a, b, c, e) + at(a, c, e, b) + at(a, e, b, c)));
            }
      return s > 0 ? m / s : m;
    });
  }
}

using SuiteFn = void (*)(Run&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"flat-zeros", suite_flat_zeros},
      {"trace-free", suite_trace_free},
      {"div-free", suite_div_free},
      {"einstein-obstruction", suite_einstein},
      {"bach-covariance", suite_bach_covariance},
      {"ym-einstein", suite_ym_einstein},
      {"gjms-flat", suite_gjms_flat},
      {"odd-d-conservation", suite_odd_conservation},
      {"lambda-scaling", suite_lambda_scaling},
      {"fd-oracle", suite_fd_oracle},
      {"weyl-conformally-flat", suite_weyl_conformally_flat},
      {"riemann-symmetries", suite_riemann_symmetries},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, f] : registry()) v.push_back(n);
    return v;
  }();
  return names;
}

NumericReport run_suite(const std::string& name, const NumericConfig& cfg) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    auto t0 = std::chrono::steady_clock::now();
    Run r{cfg, {}, {}};
    r.rep.suite = name;
    r.rep.lambda = cfg.lambda;
    fn(r);
    r.rep.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r.rep;
  }
  throw UsageError("unknown suite '" + name + "'");
}

std::vector<NumericReport> run_suites(const std::string& name, const NumericConfig& cfg) {
  std::vector<NumericReport> out;
  if (name == "all") {
    for (const auto& n : suite_names()) out.push_back(run_suite(n, cfg));
  } else {
    out.push_back(run_suite(name, cfg));
  }
  return out;
}

}  // namespace bcalc
