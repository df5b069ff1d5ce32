#include "crn/identifiability.hpp"

#include "crn/infer.hpp"
#include "crn/rate_table.hpp"

#include <stdexcept>

namespace crn {

std::string_view to_string(IdentifiabilityReason reason) {
  switch (reason) {
    case IdentifiabilityReason::simplex_covered: return "simplex-covered";
    case IdentifiabilityReason::hyperplane_charged: return "hyperplane-charged";
    case IdentifiabilityReason::hyperplane_confined: return "hyperplane-confined";
    case IdentifiabilityReason::insufficient_data: return "insufficient-data";
  }
  return "unknown";
}

namespace {

IdentifiabilityVerdict on_hyperplane(const ReactionSystem& sys, const HyperplaneSpace& space) {
  if (space.v.size() != sys.dimension()) {
    fail(ErrorCode::dimension_mismatch, "conservation vector has wrong length");
  }
  if (!conserves(sys, space.v)) {
    fail(ErrorCode::unverified_conservation,
         format_vector(space.v.values()) + " is not a conservation law of the system");
  }
  const auto states = enumerate_hyperplane(space.v, space.n);
  const auto rates = RateTable::from_system(sys, states);
  ReactionSystem witness = infer_on_hyperplane(rates, space.v, space.n, sys.species());

  if (systems_equal(witness, sys)) {
    return {true, IdentifiabilityReason::hyperplane_charged, std::nullopt};
  }
  if (!systems_agree_on(sys, witness, states)) {
    throw std::logic_error("hyperplane witness does not reproduce the rates");
  }
  return {false, IdentifiabilityReason::hyperplane_confined, std::move(witness)};
}

}  // namespace

IdentifiabilityVerdict check_identifiability(const ReactionSystem& sys, const StateSpace& space) {
  if (std::holds_alternative<FullLattice>(space)) {
    return {true, IdentifiabilityReason::simplex_covered, std::nullopt};
  }
  if (const auto* simplex = std::get_if<SimplexSpace>(&space)) {
    if (simplex->n >= system_order(sys)) {
      return {true, IdentifiabilityReason::simplex_covered, std::nullopt};
    }
    return {false, IdentifiabilityReason::insufficient_data, std::nullopt};
  }
  return on_hyperplane(sys, std::get<HyperplaneSpace>(space));
}

}  // namespace crn
