#include "bcalc/fixture.hpp"

#include <fstream>
#include <sstream>

namespace bcalc {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

Fixture parse_fixture(const std::string& text, const std::string& origin) {
  Fixture fx;
  fx.path = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  struct Pending {
    std::vector<std::string> key;
    std::string value;
    int line;
  };
  std::vector<Pending> comps;

  auto err = [&](int ln, const std::string& m) -> FixtureError {
    return FixtureError(origin + ":" + std::to_string(ln) + ": " + m);
  };

  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw err(lineno, "expected 'key = value'");
    auto key = words(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw err(lineno, "empty key");
    const std::string& k = key[0];
    if (k == "name") {
      fx.name = value;
    } else if (k == "coords") {
      if (!fx.coords.empty()) throw err(lineno, "coords given twice");
      fx.coords = words(value);
      if (fx.coords.empty()) throw err(lineno, "no coordinates");
    } else if (k == "point") {
      std::vector<double> p;
      for (const auto& w : words(value)) {
        try {
          size_t used = 0;
          p.push_back(std::stod(w, &used));
          if (used != w.size()) throw std::invalid_argument(w);
        } catch (const std::exception&) {
          throw err(lineno, "bad coordinate value '" + w + "'");
        }
      }
      fx.points.push_back(std::move(p));
    } else if (k == "einstein" || k == "flat" || k == "ym-on-shell") {
      if (value != "true" && value != "false") throw err(lineno, "flag must be true or false");
      fx.flags[k] = value == "true";
    } else if (k == "g" || k == "A" || k == "J" || k == "T" || k == "phi" || k == "psi" || k == "omega") {
      comps.push_back({key, value, lineno});
    } else {
      throw err(lineno, "unknown key '" + k + "'");
    }
  }
  if (fx.coords.empty()) throw FixtureError(origin + ": missing coords");
  if (fx.points.empty()) throw FixtureError(origin + ": no sample points");
  const int n = fx.dim();
  for (const auto& p : fx.points)
    if ((int)p.size() != n) throw FixtureError(origin + ": sample point with " + std::to_string(p.size()) + " coordinates");

  auto matrix = [n] { return std::vector<std::vector<Formula>>(n, std::vector<Formula>(n)); };
  fx.g = matrix();
  std::vector<std::vector<int>> gset(n, std::vector<int>(n, 0));
  bool any_g = false;
  for (const auto& c : comps) {
    const std::string& k = c.key[0];
    size_t want = (k == "g" || k == "T") ? 2 : (k == "A" || k == "J") ? 1 : 0;
    if (c.key.size() != want + 1) throw err(c.line, "'" + k + "' takes " + std::to_string(want) + " indices");
    std::vector<int> ix;
    for (size_t i = 1; i < c.key.size(); ++i) {
      int v;
      try {
        size_t used = 0;
        v = std::stoi(c.key[i], &used);
        if (used != c.key[i].size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw err(c.line, "bad index '" + c.key[i] + "'");
      }
      if (v < 0 || v >= n) throw err(c.line, "index out of range");
      ix.push_back(v);
    }
    Formula f;
    try {
      f = Formula(c.value, fx.coords);
    } catch (const FormulaError& e) {
      throw err(c.line, e.what());
    }
    if (k == "g" || k == "T") {
      auto* M = &fx.g;
      if (k == "T") {
        if (!fx.T) fx.T = matrix();
        M = &*fx.T;
      } else {
        any_g = true;
        if (gset[ix[0]][ix[1]]) throw err(c.line, "metric component given twice");
        gset[ix[0]][ix[1]] = gset[ix[1]][ix[0]] = 1;
      }
      (*M)[ix[0]][ix[1]] = f;
      (*M)[ix[1]][ix[0]] = f;
    } else if (k == "A" || k == "J") {
      auto& v = k == "A" ? fx.A : fx.J;
      if (!v) v = std::vector<Formula>(n);
      (*v)[ix[0]] = f;
    } else if (k == "phi") {
      fx.phi = f;
    } else if (k == "psi") {
      fx.psi = f;
    } else {
      fx.omega = f;
    }
  }
  if (!any_g) throw FixtureError(origin + ": no metric components");
  if (fx.name.empty()) fx.name = origin;
  return fx;
}

Fixture load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fixture(ss.str(), path);
}

Fixture Fixture::rescaled() const {
  if (!omega) throw FixtureError(path + ": no omega for the conformal rescaling");
  Fixture r = *this;
  r.name = name + "[e^2w g]";
  r.flags.clear();
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      if (!g[i][j].is_zero())
        r.g[i][j] = Formula("exp(2*(" + omega->text() + "))*(" + g[i][j].text() + ")", coords);
  return r;
}

}  // namespace bcalc
