#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcalc/formula.hpp"

namespace bcalc {

struct FixtureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Metric and field data read from a key-value file:
//
//   name = s2xs2
//   coords = x y u v
//   g 0 0 = 4/(1+x^2+y^2)^2        components not given are 0, g is symmetric
//   A 1 = x*y                      gauge potential, F = dA (abelian)
//   J 0 = ...    T 0 1 = ...       bold J and bold T, all lower
//   phi = ...    psi = ...         scalar data
//   omega = ...                    Weyl factor for the covariance suite
//   einstein = true                metadata flags (einstein, flat, ym-on-shell)
//   point = 0.1 0.2 0.3 0.4        sample points, one per line
//
// '#' starts a comment.
struct Fixture {
  std::string name, path;
  std::vector<std::string> coords;
  std::vector<std::vector<Formula>> g;
  std::optional<std::vector<Formula>> A, J;
  std::optional<std::vector<std::vector<Formula>>> T;
  std::optional<Formula> phi, psi, omega;
  std::map<std::string, bool> flags;
  std::vector<std::vector<double>> points;

  int dim() const { return (int)coords.size(); }
  bool flag(const std::string& k) const {
    auto it = flags.find(k);
    return it != flags.end() && it->second;
  }
  // e^{2 omega} g, sharing everything else
  Fixture rescaled() const;
};

Fixture parse_fixture(const std::string& text, const std::string& origin);
Fixture load_fixture(const std::string& path);

}  // namespace bcalc
