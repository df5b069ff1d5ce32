#include "doctest.h"

#include "crn/identifiability.hpp"
#include "crn/infer.hpp"
#include "support.hpp"

using namespace crn;

TEST_CASE("confined isomerization is not identifiable") {
  auto iso = testing::isomerization();
  auto verdict = check_identifiability(iso, HyperplaneSpace{ConservationVector{1, 1}, 2});
  CHECK_FALSE(verdict.identifiable);
  CHECK(verdict.reason == IdentifiabilityReason::hyperplane_confined);
  REQUIRE(verdict.witness);
  CHECK(systems_equal(*verdict.witness, testing::isomerization_order2()));
  CHECK(systems_agree_on(*verdict.witness, iso, enumerate_hyperplane(ConservationVector{1, 1}, 2)));
  CHECK_FALSE(systems_equal(*verdict.witness, iso));
}

TEST_CASE("order-3 network on S_3 is identifiable") {
  auto sys = testing::example_order3_system();
  auto verdict = check_identifiability(sys, SimplexSpace{3});
  CHECK(verdict.identifiable);
  CHECK(verdict.reason == IdentifiabilityReason::simplex_covered);
  CHECK_FALSE(verdict.witness);

  auto partial = check_identifiability(sys, SimplexSpace{2});
  CHECK_FALSE(partial.identifiable);
  CHECK(partial.reason == IdentifiabilityReason::insufficient_data);

  CHECK(check_identifiability(sys, FullLattice{}).identifiable);
}

TEST_CASE("every reaction charged on the hyperplane is identifiable") {
  auto sys = parse_network("species: X1 X2\n2*X1 -> 2*X2 @ 1\n2*X2 -> 2*X1 @ 1\n");
  auto verdict = check_identifiability(sys, HyperplaneSpace{ConservationVector{1, 1}, 2});
  CHECK(verdict.identifiable);
  CHECK(verdict.reason == IdentifiabilityReason::hyperplane_charged);
}

TEST_CASE("hyperplane check requires a conservation law") {
  auto birth = parse_network("species: X1 X2\n0 -> X1 @ 1\n");
  try {
    check_identifiability(birth, HyperplaneSpace{ConservationVector{1, 1}, 2});
    FAIL("expected UnverifiedConservation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unverified_conservation);
  }
  CHECK(to_string(IdentifiabilityReason::hyperplane_confined) == "hyperplane-confined");
}
