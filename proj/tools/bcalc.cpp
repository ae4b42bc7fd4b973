// bcalc: derive, tabulate and verify the boundary calculus.
//
// Exit codes: 0 success, 1 verification failure, 2 usage, 3 unsupported
// dimension, 4 missing or corrupt fixture, 5 no scalar equation, 6 internal.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "bcalc/checks.hpp"
#include "bcalc/emit.hpp"
#include "bcalc/fixture.hpp"
#include "bcalc/numeric.hpp"

using namespace bcalc;

namespace {

constexpr size_t kStdoutLimit = 4096;

struct Fail {
  int code;
  std::string tag, msg;
};

[[noreturn]] void fail(int code, const std::string& tag, const std::string& msg) { throw Fail{code, tag, msg}; }

int report(const std::string& tag, std::string msg, int code) {
  for (auto& ch : msg)
    if (ch == '\n' || ch == '\r') ch = ' ';
  std::cerr << "error[" << tag << "]: " << msg << "\n";
  return code;
}

struct Options {
  int d = 0;
  std::string sector = "gravity";
  std::string weight;
  int gjms_order = 0;
  std::string emit = "text";
  std::string suite = "all";
  double lambda = -1;
  std::optional<double> tolerance;
  std::string fixtures = "fixtures";
  bool experimental = false;
  std::string out;
};

void check_dimension(int d, bool experimental) {
  if (d == 3) fail(3, "unsupported-dimension", "d=3 is not supported: the boundary calculus needs d >= 4");
  if (d < 4) fail(3, "unsupported-dimension", "d=" + std::to_string(d) + " is not supported: the boundary calculus needs d >= 4");
  if (d > 8 && !experimental)
    fail(3, "unsupported-dimension", "d=" + std::to_string(d) + " is above 8; pass --experimental-d to build it anyway");
}

std::optional<Rat> scalar_weight(const Options& o, const CLI::App& cmd) {
  bool has_w = cmd.count("--weight") > 0, has_l = cmd.count("--gjms-order") > 0;
  if (o.sector != "scalar") {
    if (has_w || has_l) fail(2, "usage", "--weight and --gjms-order apply to the scalar sector only");
    return std::nullopt;
  }
  if (has_w == has_l) fail(2, "usage", "the scalar sector needs exactly one of --weight and --gjms-order");
  Rat w;
  if (has_w) {
    try {
      w = Rat(o.weight);
      w.canonicalize();
    } catch (const std::exception&) {
      fail(2, "usage", "--weight expects a rational number such as 1 or -3/2, got '" + o.weight + "'");
    }
  } else {
    if (o.gjms_order < 1) fail(2, "usage", "--gjms-order must be positive");
    w = Rat(o.gjms_order) - Rat(o.d, 2);
    w.canonicalize();
  }
  Rat n = 2 * w + o.d;
  if (n.get_den() != 1)
    fail(5, "no-equation", "2w + d = " + n.get_str() + " is not an integer: the scalar is unconstrained");
  if (n < 2) fail(5, "no-equation", "2w + d = " + n.get_str() + " gives no scalar equation");
  return w;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(2, "usage", "cannot write " + path);
  f << body;
}

// Documents go to --out, or to stdout when short; long ones go to a default
// file with a summary on stdout.
void deliver(const Document& doc, Format f, const std::string& out) {
  std::string body = render(doc, f);
  std::string path = out;
  if (path.empty() && body.size() > kStdoutLimit)
    path = doc.kind + "-d" + std::to_string(doc.d) + "-" + doc.sector + "." + format_extension(f);
  if (path.empty()) {
    std::cout << body;
    return;
  }
  write_file(path, body);
  std::cout << summary(doc) << "written: " << path << "\n";
}

int run_document(const Options& o, const CLI::App& cmd, bool tables) {
  check_dimension(o.d, o.experimental);
  auto f = parse_format(o.emit);
  std::optional<Rat> w = scalar_weight(o, cmd);
  Document doc = tables ? tables_document(o.sector, o.d, w) : derive_document(o.sector, o.d, w);
  deliver(doc, *f, o.out);
  return 0;
}

int run_verify(const Options& o) {
  if (o.d != 0) check_dimension(o.d, o.experimental);
  const auto& names = suite_names();
  bool numeric_named = std::find(names.begin(), names.end(), o.suite) != names.end();
  if (o.suite != "all" && o.suite != "symbolic" && !numeric_named) {
    std::string list = "all, symbolic";
    for (const auto& n : names) list += ", " + n;
    fail(2, "usage", "unknown suite '" + o.suite + "' (known: " + list + ")");
  }
  SymbolicConfig sc;
  sc.formulas = o.fixtures + "/formulas.json";
  sc.d = o.d;
  NumericConfig nc;
  nc.fixtures_dir = o.fixtures + "/metrics";
  nc.lambda = o.lambda;
  nc.tolerance = o.tolerance;
  nc.d = o.d;

  // everything is computed before anything is printed, so a bad fixture
  // leaves no partial report
  std::vector<SymbolicResult> sym;
  if (!numeric_named) sym = run_symbolic(sc);
  std::vector<NumericReport> num;
  if (o.suite != "symbolic") num = run_suites(numeric_named ? o.suite : "all", nc);

  bool ok = true;
  std::ostringstream os;
  int npass = 0;
  for (const auto& r : sym) {
    os << "symbolic " << r.id << " d=" << r.d << " " << r.verdict << " " << (r.pass ? "PASS" : "FAIL") << "\n";
    ok &= r.pass;
    npass += r.pass;
  }
  if (!numeric_named) os << "symbolic: " << npass << "/" << sym.size() << " passed\n";
  for (const auto& rep : num) {
    int np = 0;
    for (const auto& c : rep.checks) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.3e tol %.0e", c.max_residual, c.tolerance);
      os << "numeric " << rep.suite << " " << c.id << " [" << c.fixture << "] " << buf << " "
         << (c.pass ? "PASS" : "FAIL") << "\n";
      np += c.pass;
    }
    os << "numeric " << rep.suite << ": " << np << "/" << rep.checks.size() << " passed\n";
    ok &= rep.pass();
  }
  os << "verify: " << (ok ? "PASS" : "FAIL") << "\n";
  if (!o.out.empty()) {
    nlohmann::json j;
    j["symbolic"] = to_json(sym);
    j["numeric"] = nlohmann::json::array();
    for (const auto& rep : num) j["numeric"].push_back(rep.to_json());
    j["verdict"] = ok ? "pass" : "fail";
    write_file(o.out, j.dump(2) + "\n");
  }
  std::cout << os.str();
  if (!o.out.empty()) std::cout << "written: " << o.out << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary calculus: derive, tabulate and verify"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c, bool with_sector) {
    c->add_option("--d", o.d, "boundary dimension")->required();
    if (with_sector) {
      c->add_option("--sector", o.sector, "gravity, ym or scalar")->check(CLI::IsMember({"gravity", "ym", "scalar"}));
      c->add_option("--weight", o.weight, "scalar weight w (rational)");
      c->add_option("--gjms-order", o.gjms_order, "GJMS order l, sets w = l - d/2");
      c->add_option("--emit", o.emit, "latex, json or text")->check(CLI::IsMember({"latex", "json", "text"}));
    }
    c->add_flag("--experimental-d", o.experimental, "allow d > 8");
    c->add_option("--out", o.out, "write the full result to this file");
  };
  CLI::App* derive = app.add_subcommand("derive", "build the calculus and print the obstruction symbols");
  common(derive, true);
  CLI::App* tables = app.add_subcommand("tables", "print the T, J and D tables of the calculus");
  common(tables, true);
  CLI::App* verify = app.add_subcommand("verify", "run the symbolic identity suite, then the numeric suites");
  verify->add_option("--d", o.d, "restrict to one boundary dimension");
  verify->add_option("--suite", o.suite, "all, symbolic or a numeric suite name");
  verify->add_option("--lambda", o.lambda, "numeric value of Lambda");
  verify->add_option("--tolerance", o.tolerance, "replaces every numeric tolerance");
  verify->add_option("--fixtures", o.fixtures, "directory holding formulas.json and metrics/");
  verify->add_flag("--experimental-d", o.experimental, "allow d > 8");
  verify->add_option("--out", o.out, "write the JSON report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("usage", e.what(), 2);
  }

  try {
    if (*derive) return run_document(o, *derive, false);
    if (*tables) return run_document(o, *tables, true);
    return run_verify(o);
  } catch (const Fail& f) {
    return report(f.tag, f.msg, f.code);
  } catch (const FixtureError& e) {
    return report("fixture", e.what(), 4);
  } catch (const UsageError& e) {
    return report("usage", e.what(), 2);
  } catch (const std::exception& e) {
    return report("internal", e.what(), 6);
  }
}
