#pragma once

#include "crn/core.hpp"
#include "crn/rate_table.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace crn {

/// Exact reproduction: any negative coefficient is NonRealizable.
struct StrictMode {};

/// Noise-tolerant inference for estimated rates. At state x the residual
/// r = lambda*_z(x) - lambda^{i-1}_z(x) is compared with the total rate s(x)
/// recorded at x:
///   |r| <= threshold * s(x)               -> coefficient treated as 0
///   r > threshold * s(x)                  -> reaction emitted
///   -abort_fraction * s(x) <= r < -thr.s  -> clamped to 0 and reported
///   r < -abort_fraction * s(x)            -> NonRealizable
struct ClampMode {
  double threshold = 1e-3;
  double abort_fraction = 0.05;
};

using InferenceMode = std::variant<StrictMode, ClampMode>;

struct InferredCoefficient {
  TransitionVector z;
  std::size_t state_index;  // position of the source state in S_N
  StateVector source;
  Rate value;
};

struct ClampedCoefficient {
  TransitionVector z;
  StateVector state;
  Rate value;
};

struct InferenceReport {
  ReactionSystem system;
  std::vector<InferredCoefficient> coefficients;
  /// Negative coefficients set to zero in clamp mode.
  std::vector<ClampedCoefficient> rejected;
  /// Positive coefficients at or below the threshold, dropped in clamp mode.
  std::vector<ClampedCoefficient> suppressed;
  /// max |reproduced - input| over every z of the input and x in S_N.
  double residual_max = 0.0;
  double threshold_used = 0.0;
};

/// Recovers the unique mass-action system of order <= n whose transition
/// rates match `rates` on the simplex S_n, processing S_n lexicographically.
/// Rates recorded outside S_n are ignored.
InferenceReport infer_on_simplex(const RateTable& rates, Count n, InferenceMode mode = StrictMode{},
                                 const std::optional<std::vector<std::string>>& species = std::nullopt);

/// Builds the v-order-n system that reproduces `rates` on S_{v,n} with every
/// reaction charged at exactly one hyperplane state.
ReactionSystem infer_on_hyperplane(const RateTable& rates, const ConservationVector& v, Count n,
                                   const std::optional<std::vector<std::string>>& species = std::nullopt);

/// True iff both systems have identical transition rates, for every z of
/// either system, at every listed state.
bool systems_agree_on(const ReactionSystem& a, const ReactionSystem& b,
                      std::span<const StateVector> states);

}  // namespace crn
