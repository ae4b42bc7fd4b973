#include "bcalc/emit.hpp"

#include <sstream>
#include <stdexcept>

#include "bcalc/calculus.hpp"
#include "bcalc/canon.hpp"
#include "bcalc/pullback.hpp"
#include "bcalc/spacetime.hpp"
#include "bcalc/text.hpp"

namespace bcalc {

std::optional<Format> parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "latex") return Format::Latex;
  if (s == "json") return Format::Json;
  return std::nullopt;
}

const char* format_extension(Format f) {
  switch (f) {
    case Format::Text:
      return "txt";
    case Format::Latex:
      return "tex";
    case Format::Json:
      return "json";
  }
  return "txt";
}

namespace {

Entry boundary_entry(std::string name, std::string latex, std::string free, const Expr& e, const Ctx& ctx) {
  Entry en;
  en.name = std::move(name);
  en.latex = std::move(latex);
  en.free = std::move(free);
  en.value = e;
  en.weight = weight_of(e, ctx);
  return en;
}

Entry spacetime_entry(std::string name, std::string latex, std::string free, const Expr& e) {
  Entry en;
  en.name = std::move(name);
  en.latex = std::move(latex);
  en.free = std::move(free);
  en.theory = Theory::Spacetime;
  en.value = e;
  return en;
}

std::string sup(int N) { return "^(" + std::to_string(N) + ")"; }
std::string lsup(int N) { return "^{(" + std::to_string(N) + ")}"; }

void check_sector(const std::string& s) {
  if (s != "gravity" && s != "ym" && s != "scalar") throw std::invalid_argument("unknown sector '" + s + "'");
}

Calculus& calc(const std::string& sector, int d, const std::optional<Rat>& w) {
  if (sector == "scalar") return scalar_calculus(d, *w);
  return calculus_for(sector == "ym" ? Output::YMEquation : Output::Obstruction, d);
}

// one entry per flattened piece of D^(N)_A; ids 0 = A, 1 = P, 2 = Q
void op_entries(Document& doc, Calculus& c, int N) {
  const DOp& op = c.Dop(N);
  int k = 0;
  for (const auto& o : op.ops) {
    auto nm = [](Idx x) {
      std::string s = x.up ? "^" : "_";
      return s + (x.id == 0 ? "A" : x.id == 1 ? "P" : "Q");
    };
    std::string what, lwhat;
    switch (o.kind) {
      case OpTerm::Nabla:
        what = "nabla" + nm(o.i1);
        lwhat = "\\nabla" + nm(o.i1);
        break;
      case OpTerm::Gamma:
        what = "Gamma" + nm(o.i1);
        lwhat = "\\Gamma" + nm(o.i1);
        break;
      case OpTerm::GL:
        what = "Delta" + nm(o.i1) + nm(o.i2);
        lwhat = "\\Delta" + nm(o.i1) + "{}" + nm(o.i2);
        break;
      case OpTerm::Bracket:
        what = "[coefficient, .]";
        lwhat = "[\\,\\cdot\\,,\\,\\cdot\\,]";
        break;
    }
    ++k;
    Entry e = boundary_entry("D" + sup(N) + "_A term " + std::to_string(k) + ": coefficient of " + what,
                             "\\mathcal{D}" + lsup(N) + "_{A} \\ni (\\cdot)\\," + lwhat, "APQ", o.coeff, c.ctx());
    doc.entries.push_back(std::move(e));
  }
}

}  // namespace

Document derive_document(const std::string& sector, int d, const std::optional<Rat>& w) {
  check_sector(sector);
  Document doc;
  doc.kind = "derive";
  doc.sector = sector;
  doc.d = d;
  if (sector == "scalar") doc.w = w->get_str();
  Calculus& c = calc(sector, d, w);
  const Ctx& ctx = c.ctx();
  Pullback pb(c.tables(), d);
  if (sector == "gravity") {
    doc.entries.push_back(boundary_entry("O_AB", "\\mathcal{O}_{AB}", "AB", boundary_form(Output::Obstruction, d), ctx));
    doc.entries.push_back(boundary_entry("O_A", "\\mathcal{O}_{A}", "A", boundary_form(Output::Conservation, d), ctx));
    doc.entries.push_back(boundary_entry("Gamma_A T_BC", "\\Gamma_{A}\\mathcal{T}_{BC}", "ABC", c.gammaT(), ctx));
    doc.entries.push_back(spacetime_entry("pullback O_ab", "\\sigma^{*}\\mathcal{O}_{ab}", "ab", spacetime_form(Output::Obstruction, d)));
    doc.entries.push_back(spacetime_entry("pullback O_a", "\\sigma^{*}\\mathcal{O}_{a}", "a", spacetime_form(Output::Conservation, d)));
  } else if (sector == "ym") {
    doc.entries.push_back(boundary_entry("Y_B", "Y_{B}", "B", boundary_form(Output::YMEquation, d), ctx));
    doc.entries.push_back(boundary_entry("Y", "Y", "", boundary_form(Output::YMConservation, d), ctx));
    doc.entries.push_back(boundary_entry("Gamma_C J_A", "\\Gamma_{C}\\mathcal{J}_{A}", "CA", c.gammaJ(), ctx));
    for (int N = 1; N <= d - 4; ++N)
      doc.entries.push_back(boundary_entry("J" + sup(N) + "_B", "\\hat J" + lsup(N) + "_{B}", "B", c.JY(N), ctx));
    doc.entries.push_back(spacetime_entry("pullback Y_a", "\\sigma^{*}Y_{a}", "a", spacetime_form(Output::YMEquation, d)));
    doc.entries.push_back(spacetime_entry("pullback Y", "\\sigma^{*}Y", "", spacetime_form(Output::YMConservation, d)));
    doc.entries.push_back(spacetime_entry("pullback Gamma_c J_a", "\\sigma^{*}\\Gamma_{c}\\mathcal{J}_{a}", "ca", spacetime_form(Output::WeylJ, d)));
  } else {
    const int ns = c.nstar();
    if (ns > d - 1)
      doc.notes.push_back("uses calculus orders above D-4: valid modulo the gravity ideal (on-shell only)");
    Expr P = canonical(c.gjms(), d);
    doc.entries.push_back(boundary_entry("P", "\\mathcal{P}", "", P, ctx));
    doc.entries.push_back(boundary_entry("Gamma_A psi", "\\Gamma_{A}\\psi", "A", c.gammaPsi(), ctx));
    for (int N = 1; N < ns; ++N)
      doc.entries.push_back(boundary_entry("phi" + sup(N), "\\hat\\varphi" + lsup(N), "", c.phi(N), ctx));
    doc.entries.push_back(spacetime_entry("pullback P", "\\sigma^{*}\\mathcal{P}", "", canonical(pb(P), d)));
  }
  return doc;
}

Document tables_document(const std::string& sector, int d, const std::optional<Rat>& w) {
  check_sector(sector);
  Document doc;
  doc.kind = "tables";
  doc.sector = sector;
  doc.d = d;
  if (sector == "scalar") doc.w = w->get_str();
  Calculus& c = calc(sector, d, w);
  const Ctx& ctx = c.ctx();
  const int D = d + 1;
  for (int N = 0; N <= D - 3; ++N)
    doc.entries.push_back(boundary_entry("T" + sup(N) + "_AB", "\\hat T" + lsup(N) + "_{AB}", "AB", c.T(N), ctx));
  for (int N = 0; N <= D - 4; ++N)
    doc.entries.push_back(boundary_entry("J" + sup(N) + "_ABC", "\\hat J" + lsup(N) + "_{ABC}", "ABC", c.Jg(N), ctx));
  for (int N = 0; N <= D - 4; ++N) op_entries(doc, c, N);
  doc.entries.push_back(boundary_entry("Gamma_A T_BC", "\\Gamma_{A}\\mathcal{T}_{BC}", "ABC", c.gammaT(), ctx));
  if (sector == "ym") {
    for (int N = 0; N <= D - 5; ++N)
      doc.entries.push_back(boundary_entry("F" + sup(N) + "_AB", "\\hat F" + lsup(N) + "_{AB}", "AB", c.FY(N), ctx));
    for (int N = 0; N <= D - 4; ++N)
      doc.entries.push_back(boundary_entry("J" + sup(N) + "_A", "\\hat J" + lsup(N) + "_{A}", "A", c.JY(N), ctx));
    doc.entries.push_back(boundary_entry("Gamma_C J_A", "\\Gamma_{C}\\mathcal{J}_{A}", "CA", c.gammaJ(), ctx));
  }
  if (sector == "scalar") {
    for (int N = 0; N <= c.nstar(); ++N)
      doc.entries.push_back(boundary_entry("phi" + sup(N), "\\hat\\varphi" + lsup(N), "", c.phi(N), ctx));
    doc.entries.push_back(boundary_entry("Gamma_A psi", "\\Gamma_{A}\\psi", "A", c.gammaPsi(), ctx));
  }
  return doc;
}

namespace {

std::string weight_text(const Entry& e) {
  if (!e.weight) return "";
  if (e.weight->zero) return "zero";
  if (!e.weight->homogeneous()) return "inhomogeneous";
  return e.weight->value.get_str();
}

std::string header(const Document& doc) {
  std::string h = doc.kind + " d=" + std::to_string(doc.d) + " sector=" + doc.sector;
  if (!doc.w.empty()) h += " w=" + doc.w;
  return h;
}

}  // namespace

nlohmann::json document_json(const Document& doc) {
  nlohmann::json j;
  j["kind"] = doc.kind;
  j["d"] = doc.d;
  j["sector"] = doc.sector;
  if (!doc.w.empty()) j["w"] = doc.w;
  j["notes"] = doc.notes;
  nlohmann::json es = nlohmann::json::array();
  for (const auto& e : doc.entries) {
    nlohmann::json x;
    x["name"] = e.name;
    x["free"] = e.free;
    x["theory"] = e.theory == Theory::Boundary ? "boundary" : "spacetime";
    if (e.weight) x["weight"] = weight_text(e);
    Ctx ctx;
    ctx.d = doc.d;
    x["expr"] = to_json(e.value, letters(e.free), e.theory == Theory::Boundary ? &ctx : nullptr);
    es.push_back(std::move(x));
  }
  j["entries"] = es;
  return j;
}

std::string render(const Document& doc, Format f) {
  std::ostringstream os;
  switch (f) {
    case Format::Json:
      os << document_json(doc).dump(2) << "\n";
      break;
    case Format::Text:
      os << "# " << header(doc) << "\n";
      for (const auto& n : doc.notes) os << "# note: " << n << "\n";
      for (const auto& e : doc.entries) os << e.name << " = " << to_text(e.value, letters(e.free)) << "\n";
      break;
    case Format::Latex:
      os << "% " << header(doc) << "\n";
      for (const auto& n : doc.notes) os << "% note: " << n << "\n";
      for (const auto& e : doc.entries) {
        os << "% " << e.name << "\n\\begin{equation}\n" << e.latex << " = " << to_latex(e.value, letters(e.free))
           << "\n\\end{equation}\n";
      }
      break;
  }
  return os.str();
}

std::string summary(const Document& doc) {
  std::ostringstream os;
  os << header(doc) << "\n";
  for (const auto& n : doc.notes) os << "note: " << n << "\n";
  for (const auto& e : doc.entries) {
    os << "  " << e.name << ": " << e.value.size() << (e.value.size() == 1 ? " term" : " terms");
    if (e.weight) os << ", weight " << weight_text(e);
    os << "\n";
  }
  return os.str();
}

}  // namespace bcalc
