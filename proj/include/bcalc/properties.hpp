#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bcalc {

// Outcome of one randomized or exhaustive invariant check.
struct PropertyResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  int nontrivial = 0;  // cases where the checked quantity was not identically zero
  std::string first_failure;
  double seconds = 0;
  bool pass() const { return failures == 0 && cases > 0; }
};

// canonical(canonical(e)) == canonical(e), and the canonical form does not
// change under dummy renaming, factor and term shuffles.
PropertyResult prop_canonical(uint64_t seed, int n);
// canonical e survives to_json -> dump -> parse -> from_json, and to_text -> parse_expr.
PropertyResult prop_round_trip(uint64_t seed, int n);
// X(Y e) - Y(X e) equals the closed commutator, modulo the identities.
PropertyResult prop_commutators(uint64_t seed, int n, int d);
// The Jacobi identity of the closed brackets on random generators.
PropertyResult prop_jacobi(uint64_t seed, int n, int d);
// Every built table entry for d = 4..8 and every sector is homogeneous with
// its predicted weight.
PropertyResult prop_table_weights();
// Random generators applied to table entries shift the weight as predicted.
PropertyResult prop_derivation_weights(uint64_t seed, int n);

// All of the above with n samples each, commutators and Jacobi at d = 4 and 5.
std::vector<PropertyResult> run_properties(uint64_t seed, int n);

}  // namespace bcalc
