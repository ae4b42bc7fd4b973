#include "bcalc/spacetime.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "bcalc/canon.hpp"
#include "bcalc/pullback.hpp"

namespace bcalc {

ParseEnv spacetime_env(const std::string& free_letters) {
  ParseEnv env;
  env.theory = Theory::Spacetime;
  env.free_names = letters("abc");
  env.macros["C"] = {3, parse_expr("n_c P_ab - n_b P_ac", env)};
  env.macros["B"] = {2, parse_expr("n^c C_abc - P^dc W_dabc", env)};
  env.free_names = letters("a");
  env.macros["j1"] = {1, parse_expr("n^b F_ba", env)};
  env.macros["j3"] = {1, parse_expr("n_c n^c n^b F_ba + 4 n_c P^d_d F^c_a + 8 P^bc n_b F_ca - 3 P^d_d n^b F_ba"
                                    " + 8 C^db_a F_db - 2 [F_ba, n_c F^cb]",
                                    env)};
  env.free_names = letters("ab");
  env.macros["X"] = {2, parse_expr("2 n_a j1_b - n_b j1_a + 8 P_a^c F_cb - 4 P_b^c F_ca", env)};
  env.free_names = letters(free_letters);
  return env;
}

const char* output_name(Output o) {
  switch (o) {
    case Output::Obstruction:
      return "obstruction";
    case Output::Conservation:
      return "conservation";
    case Output::YMEquation:
      return "ym-equation";
    case Output::YMConservation:
      return "ym-conservation";
    case Output::GJMS:
      return "gjms";
    case Output::WeylJ:
      return "weyl-J";
  }
  return "?";
}

namespace {

std::recursive_mutex mu;

struct Entry {
  Expr boundary, spacetime;
  bool has_b = false, has_st = false;
};

// keyed by sector, d and the scalar weight as text
std::map<std::tuple<int, int, std::string>, std::unique_ptr<Calculus>>& calcs() {
  static std::map<std::tuple<int, int, std::string>, std::unique_ptr<Calculus>> m;
  return m;
}

std::map<std::tuple<int, int, int>, Entry>& entries() {
  static std::map<std::tuple<int, int, int>, Entry> m;
  return m;
}

int sector_of(Output o) {
  switch (o) {
    case Output::Obstruction:
    case Output::Conservation:
      return 0;
    case Output::YMEquation:
    case Output::YMConservation:
    case Output::WeylJ:
      return 1;
    case Output::GJMS:
      return 2;
  }
  return 0;
}

}  // namespace

Calculus& calculus_for(Output o, int d, int ell) {
  if (sector_of(o) == 2) {
    Rat w = Rat(ell) - Rat(d, 2);
    w.canonicalize();
    return scalar_calculus(d, w);
  }
  std::lock_guard<std::recursive_mutex> lock(mu);
  int sec = sector_of(o);
  auto& c = calcs()[{sec, d, ""}];
  if (!c) {
    CalcOptions opt;
    opt.d = d;
    opt.ym = sec == 1;
    c = std::make_unique<Calculus>(opt);
  }
  return *c;
}

Calculus& scalar_calculus(int d, const Rat& w) {
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto& c = calcs()[{2, d, w.get_str()}];
  if (!c) {
    CalcOptions opt;
    opt.d = d;
    opt.scalar = true;
    opt.w = w;
    c = std::make_unique<Calculus>(opt);
  }
  return *c;
}

void clear_caches() {
  std::lock_guard<std::recursive_mutex> lock(mu);
  entries().clear();
  calcs().clear();
}

const Expr& boundary_form(Output o, int d, int ell) {
  std::lock_guard<std::recursive_mutex> lock(mu);
  auto& e = entries()[{(int)o, d, ell}];
  if (!e.has_b) {
    Calculus& c = calculus_for(o, d, ell);
    switch (o) {
      case Output::Obstruction:
        e.boundary = c.O2();
        break;
      case Output::Conservation:
        e.boundary = c.O1();
        break;
      case Output::YMEquation:
        e.boundary = c.YB();
        break;
      case Output::YMConservation:
        e.boundary = c.Y0();
        break;
      case Output::GJMS:
        e.boundary = c.gjms();
        break;
      case Output::WeylJ:
        e.boundary = c.gammaJ();
        break;
    }
    e.has_b = true;
  }
  return e.boundary;
}

const Expr& spacetime_form(Output o, int d, int ell) {
  std::lock_guard<std::recursive_mutex> lock(mu);
  const Expr& b = boundary_form(o, d, ell);
  auto& e = entries()[{(int)o, d, ell}];
  if (!e.has_st) {
    Pullback pb(calculus_for(o, d, ell).tables(), d);
    e.spacetime = canonical(pb(b), d);
    e.has_st = true;
  }
  return e.spacetime;
}

}  // namespace bcalc
