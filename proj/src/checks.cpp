#include "bcalc/checks.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bcalc/calculus.hpp"
#include "bcalc/canon.hpp"
#include "bcalc/fixture.hpp"
#include "bcalc/pullback.hpp"
#include "bcalc/reduce.hpp"
#include "bcalc/spacetime.hpp"

namespace bcalc {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void add_macros(ParseEnv& env, const nlohmann::json& list, const std::string& where) {
  for (const auto& m : list) {
    std::string name = m.at("name"), fr = m.at("free"), text = m.at("text");
    env.free_names = letters(fr);
    try {
      env.macros[name] = {(int)fr.size(), parse_expr(text, env)};
    } catch (const std::exception& e) {
      throw FixtureError(where + ": macro " + name + ": " + e.what());
    }
  }
}

bool spacetime_quantity(const std::string& q) { return q.rfind("st ", 0) == 0 || q == "pullback"; }

Output output_of(const std::string& q) {
  std::string b = q.rfind("st ", 0) == 0 ? q.substr(3) : q;
  if (b == "O_AB") return Output::Obstruction;
  if (b == "O_A") return Output::Conservation;
  if (b == "Y_B") return Output::YMEquation;
  if (b == "Y") return Output::YMConservation;
  if (b == "P") return Output::GJMS;
  if (b == "Gamma J") return Output::WeylJ;
  throw std::invalid_argument("unknown quantity: " + q);
}

Calculus& calc_of(const FormulaCheck& f) {
  if (f.quantity == "P") {
    if (!f.w.empty()) {
      Rat w(f.w);
      w.canonicalize();
      return scalar_calculus(f.d, w);
    }
    return calculus_for(Output::GJMS, f.d, f.ell);
  }
  if (f.quantity == "Gamma T" || f.quantity == "pullback") {
    if (f.quantity == "pullback" && f.sector == "ym") return calculus_for(Output::YMEquation, f.d);
    return calculus_for(Output::Obstruction, f.d);
  }
  if (f.quantity == "J") return calculus_for(Output::YMEquation, f.d);
  return calculus_for(output_of(f.quantity), f.d, f.ell);
}

std::string clip(std::string s, size_t n = 600) {
  if (s.size() > n) s = s.substr(0, n) + " ...";
  return s;
}

const char* kQuantities[] = {"O_AB", "O_A", "Gamma T", "Y_B", "Y", "Gamma J", "J", "P", "pullback",
                             "st O_AB", "st O_A", "st Y_B", "st Y", "st Gamma J"};

}  // namespace

FormulaSet parse_formulas(const std::string& text, const std::string& origin) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw FixtureError(origin + ": malformed JSON: " + e.what());
  }
  FormulaSet out;
  try {
    ParseEnv base;
    if (j.contains("boundary_macros")) add_macros(base, j["boundary_macros"], origin);
    for (const auto& c : j.at("checks")) {
      FormulaCheck f;
      f.id = c.at("id");
      std::string where = origin + ": " + f.id;
      f.criterion = c.value("criterion", 0);
      f.d = c.at("d");
      f.quantity = c.at("quantity");
      f.free = c.value("free", "");
      f.expect = c.at("expect");
      f.compare = c.value("compare", "bianchi");
      f.origin = c.value("origin", "printed");
      f.note = c.value("note", "");
      f.source = c.value("source", "");
      f.sector = c.value("sector", "gravity");
      f.N = c.value("N", 0);
      f.ell = c.value("ell", 0);
      f.w = c.value("w", "");
      bool known = false;
      for (const char* q : kQuantities) known |= f.quantity == q;
      if (!known) throw FixtureError(where + ": unknown quantity '" + f.quantity + "'");
      if (f.compare != "exact" && f.compare != "bianchi" && f.compare != "on-shell")
        throw FixtureError(where + ": unknown comparison '" + f.compare + "'");
      if (f.d < 4 || f.d > 8) throw FixtureError(where + ": dimension out of range");
      if (f.quantity == "P" && f.ell == 0 && f.w.empty()) throw FixtureError(where + ": scalar check needs ell or w");
      if (spacetime_quantity(f.quantity)) {
        f.env = spacetime_env(f.free);
      } else {
        f.env = base;
        if (c.contains("macros")) add_macros(f.env, j.at("macro_sets").at(c["macros"].get<std::string>()), where);
        f.env.free_names = letters(f.free);
      }
      try {
        parse_expr(f.expect, f.env);
        if (!f.source.empty()) {
          ParseEnv b;
          b.free_names = letters(f.free.size() ? std::string("ABCDEF").substr(0, f.free.size()) : "");
          parse_expr(f.source, b);
        }
      } catch (const FixtureError&) {
        throw;
      } catch (const std::exception& e) {
        throw FixtureError(where + ": " + e.what());
      }
      out.checks.push_back(std::move(f));
    }
  } catch (const FixtureError&) {
    throw;
  } catch (const std::exception& e) {
    throw FixtureError(origin + ": " + e.what());
  }
  return out;
}

FormulaSet load_formulas(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError(path + ": cannot open formula fixture");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_formulas(ss.str(), path);
}

Expr check_quantity(const FormulaCheck& f) {
  Calculus& c = calc_of(f);
  const int d = f.d;
  const std::string& q = f.quantity;
  if (q == "Gamma T") return c.gammaT();
  if (q == "J") return c.JY(f.N);
  if (q == "pullback") {
    ParseEnv b;
    b.free_names = letters(std::string("ABCDEF").substr(0, f.free.size()));
    Expr e = parse_expr(f.source, b);
    Pullback pb(c.tables(), d);
    return canonical(pb(e), d);
  }
  if (f.quantity == "P" && !f.w.empty()) return canonical(c.gjms(), d);
  Output o = output_of(q);
  if (spacetime_quantity(q)) return spacetime_form(o, d, f.ell);
  return boundary_form(o, d, f.ell);
}

SymbolicResult run_formula_check(const FormulaCheck& f) {
  SymbolicResult r;
  r.id = f.id;
  r.criterion = f.criterion;
  r.d = f.d;
  r.origin = f.origin;
  r.note = f.note;
  auto t0 = Clock::now();
  Expr got = check_quantity(f);
  Expr want = canonical(parse_expr(f.expect, f.env), f.d);
  if (equal_exact(got, want, f.d)) {
    r.verdict = "exact";
    r.pass = true;
  } else if (f.compare == "exact") {
    r.verdict = "not-equal";
    r.residual = clip(to_text(canonical(got - want, f.d), letters(f.free)));
  } else {
    Theory th = spacetime_quantity(f.quantity) ? Theory::Spacetime : Theory::Boundary;
    Reducer red(th, f.d, th == Theory::Boundary ? &calc_of(f).tables() : nullptr);
    if (f.compare == "on-shell") {
      // divergence of calligraphic T on either slot
      red.add_rule({TT, 0, {}});
      red.add_rule({TT, 1, {}});
    }
    Verdict v = red.equal(got, want);
    r.pass = v == Verdict::Equal;
    r.verdict = v == Verdict::Equal ? "equal-mod-bianchi" : verdict_name(v);
    if (!r.pass) r.residual = clip(to_text(red.residual(), letters(f.free)));
  }
  r.seconds = since(t0);
  return r;
}

std::vector<std::string> identity_check_ids(int d) {
  std::vector<std::string> out;
  auto want = [&](int k) { return d == 0 || d == k; };
  for (int k : {5, 7})
    if (want(k)) out.push_back("vanishing-table-d" + std::to_string(k));
  for (int k : {4, 6})
    if (want(k))
      for (const char* n : {"gravity-trace", "gravity-div", "gravity-gamma"}) out.push_back(std::string(n) + "-d" + std::to_string(k));
  for (int k : {4, 6, 8})
    if (want(k))
      for (const char* n : {"ym-div", "ym-gamma"}) out.push_back(std::string(n) + "-d" + std::to_string(k));
  return out;
}

int identity_criterion(const std::string& id) {
  if (id.rfind("vanishing-table", 0) == 0) return 3;
  if (id.rfind("gravity-", 0) == 0) return 4;
  return 6;
}

SymbolicResult run_identity_check(const std::string& id) {
  SymbolicResult r;
  r.id = id;
  r.origin = "identity";
  r.criterion = identity_criterion(id);
  auto sp = id.rfind("-d");
  if (sp == std::string::npos) throw std::invalid_argument("unknown identity check: " + id);
  std::string kind = id.substr(0, sp);
  const int d = std::stoi(id.substr(sp + 2));
  r.d = d;
  auto t0 = Clock::now();
  auto decide = [&](Reducer& red, const Expr& e, const char* names) {
    Expr z = canonical(e, d);
    if (z.empty()) {
      r.verdict = "exact";
      r.pass = true;
      return;
    }
    Verdict v = red.zero(z);
    r.pass = v == Verdict::Equal;
    r.verdict = v == Verdict::Equal ? "equal-mod-bianchi" : verdict_name(v);
    if (!r.pass) r.residual = clip(to_text(red.residual(), letters(names)));
  };
  if (kind == "vanishing-table") {
    Calculus& c = calculus_for(Output::Obstruction, d);
    std::string bad;
    for (int i = 1; i <= d - 3; i += 2) {
      if (!c.T(i).empty()) bad += " T(" + std::to_string(i) + ")";
      if (!c.Dop(i).zero()) bad += " D(" + std::to_string(i) + ")";
      if (!c.Jg(i - 1).empty()) bad += " J(" + std::to_string(i - 1) + ")";
    }
    r.pass = bad.empty();
    r.verdict = r.pass ? "exact" : "not-equal";
    if (!r.pass) r.residual = "nonzero:" + bad;
  } else if (kind.rfind("gravity-", 0) == 0) {
    Calculus& c = calculus_for(Output::Obstruction, d);
    Expr o2 = boundary_form(Output::Obstruction, d), o1 = boundary_form(Output::Conservation, d);
    Reducer red(Theory::Boundary, d, &c.tables());
    if (kind == "gravity-trace") {
      decide(red, instantiate(o2, {up(5), lo(5)}, kDummyBase), "");
    } else if (kind == "gravity-div") {
      decide(red, nabla(instantiate(o2, {lo(0), lo(1)}, kDummyBase), up(0)), "B");
    } else if (kind == "gravity-gamma") {
      // Gamma_A O_B + Lambda (D - 3) O_AB
      Expr g = gamma(instantiate(o1, {lo(1)}, kDummyBase), lo(0), c.tables());
      decide(red, g - lam_times(1, Rat(-(d - 2)) * o2), "AB");
    } else {
      throw std::invalid_argument("unknown identity check: " + id);
    }
  } else if (kind.rfind("ym-", 0) == 0) {
    Calculus& c = calculus_for(Output::YMEquation, d);
    Expr yb = boundary_form(Output::YMEquation, d), y0 = boundary_form(Output::YMConservation, d);
    Reducer red(Theory::Boundary, d, &c.tables());
    if (kind == "ym-div") {
      decide(red, nabla(instantiate(yb, {lo(0)}, kDummyBase), up(0)), "");
    } else if (kind == "ym-gamma") {
      // Gamma_A Y + Lambda (D - 4) Y_A
      decide(red, gamma(y0, lo(0), c.tables()) - lam_times(1, Rat(-(d - 3)) * yb), "A");
    } else {
      throw std::invalid_argument("unknown identity check: " + id);
    }
  } else {
    throw std::invalid_argument("unknown identity check: " + id);
  }
  r.seconds = since(t0);
  return r;
}

std::vector<SymbolicResult> run_symbolic(const SymbolicConfig& cfg) {
  FormulaSet fs = load_formulas(cfg.formulas);
  std::vector<SymbolicResult> out;
  for (const auto& f : fs.checks) {
    if (cfg.d && f.d != cfg.d) continue;
    if (cfg.criterion >= 0 && f.criterion != cfg.criterion) continue;
    out.push_back(run_formula_check(f));
  }
  for (const auto& id : identity_check_ids(cfg.d)) {
    if (cfg.criterion >= 0 && identity_criterion(id) != cfg.criterion) continue;
    out.push_back(run_identity_check(id));
  }
  return out;
}

nlohmann::json to_json(const std::vector<SymbolicResult>& rs) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : rs) {
    nlohmann::json k;
    k["id"] = r.id;
    k["criterion"] = r.criterion;
    k["d"] = r.d;
    k["origin"] = r.origin;
    k["verdict"] = r.verdict;
    k["pass"] = r.pass;
    if (!r.residual.empty()) k["residual"] = r.residual;
    if (!r.note.empty()) k["note"] = r.note;
    a.push_back(std::move(k));
  }
  return a;
}

}  // namespace bcalc
