#pragma once

#include "crn/core.hpp"

#include <optional>
#include <string_view>
#include <variant>

namespace crn {

struct FullLattice {};
struct SimplexSpace {
  Count n;
};
struct HyperplaneSpace {
  ConservationVector v;
  Count n;
};
using StateSpace = std::variant<FullLattice, SimplexSpace, HyperplaneSpace>;

enum class IdentifiabilityReason {
  /// The observed states contain S_N for N the system order.
  simplex_covered,
  /// Every reaction is charged at exactly one hyperplane state, so no other
  /// system of the same v-order shares the rates.
  hyperplane_charged,
  /// Dynamics confined to S_{v,n}; a distinct system with equal rates exists.
  hyperplane_confined,
  /// Rates are known on too little of the lattice to pin the system down.
  insufficient_data,
};

std::string_view to_string(IdentifiabilityReason reason);

struct IdentifiabilityVerdict {
  bool identifiable = false;
  IdentifiabilityReason reason = IdentifiabilityReason::insufficient_data;
  std::optional<ReactionSystem> witness;
};

/// Hyperplane spaces require v to be a conservation law of sys
/// (UnverifiedConservation otherwise). A witness, when returned, has been
/// checked to reproduce sys's rates on S_{v,n} and to differ from sys.
IdentifiabilityVerdict check_identifiability(const ReactionSystem& sys, const StateSpace& space);

}  // namespace crn
