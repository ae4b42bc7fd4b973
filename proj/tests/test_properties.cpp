#include <doctest.h>

#include "bcalc/properties.hpp"

using namespace bcalc;

namespace {

void require(const PropertyResult& r, int min_cases) {
  INFO(r.name << ": " << r.first_failure);
  CHECK(r.cases >= min_cases);
  CHECK(r.failures == 0);
  CHECK(r.nontrivial > 0);
}

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("canonical form is idempotent and relabeling invariant") { require(prop_canonical(1, 1000), 1000); }
  TEST_CASE("JSON and text serialization round-trip") { require(prop_round_trip(2, 1000), 1000); }
  TEST_CASE("closed commutators agree with composition") {
    require(prop_commutators(3, 500, 4), 500);
    require(prop_commutators(4, 500, 5), 500);
  }
  TEST_CASE("Jacobi identity of the derivation algebra") {
    require(prop_jacobi(5, 1000, 4), 1000);
    require(prop_jacobi(6, 1000, 5), 1000);
  }
  TEST_CASE("Jacobi identity at d=6") { require(prop_jacobi(7, 100, 6), 100); }
  TEST_CASE("table entries are homogeneous with their weights") {
    auto r = prop_table_weights();
    require(r, 500);
  }
  TEST_CASE("derivations shift the weight of table entries") { require(prop_derivation_weights(8, 1000), 1000); }
}
