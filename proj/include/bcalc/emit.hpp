#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bcalc/expr.hpp"

namespace bcalc {

enum class Format { Text, Latex, Json };
std::optional<Format> parse_format(const std::string& s);
const char* format_extension(Format f);

struct Entry {
  std::string name;   // plain name, e.g. O_AB
  std::string latex;  // display name
  std::string free;   // letters naming the free ids in order
  Theory theory = Theory::Boundary;
  Expr value;
  std::optional<Weight> weight;  // boundary entries only
  std::string note;
};

struct Document {
  std::string kind;    // derive or tables
  std::string sector;  // gravity, ym or scalar
  int d = 4;
  std::string w;  // scalar weight, empty otherwise
  std::vector<std::string> notes;
  std::vector<Entry> entries;
};

// Throws std::domain_error when the scalar weight gives no integral 2w + d.
Document derive_document(const std::string& sector, int d, const std::optional<Rat>& w);
Document tables_document(const std::string& sector, int d, const std::optional<Rat>& w);

std::string render(const Document& doc, Format f);
nlohmann::json document_json(const Document& doc);
// One line per entry: name, term count and weight.
std::string summary(const Document& doc);

}  // namespace bcalc
