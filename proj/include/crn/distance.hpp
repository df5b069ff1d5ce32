#pragma once

#include "crn/core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crn {

enum class Metric { tv, intensity };
std::string_view to_string(Metric metric);

struct DistanceResult {
  Metric metric = Metric::intensity;
  std::string set_label;
  std::size_t set_size = 0;
  double value = 0.0;
  std::optional<double> time;                 // tv only
  std::optional<std::size_t> n_realizations;  // tv only
  double escaped_mass_a = 0.0;                // tv only: mass outside U
  double escaped_mass_b = 0.0;
};

/// Half the L1 difference over U of the empirical laws at time t, from n
/// realizations per system. System a uses base seed stream_seed(seed, 0),
/// system b stream_seed(seed, 1). Mass outside U is reported, not folded in.
DistanceResult distance_tv(const ReactionSystem& a, const ReactionSystem& b, const StateVector& x0a,
                           const StateVector& x0b, double t, std::span<const StateVector> set,
                           std::size_t n, std::uint64_t seed, std::string set_label = {},
                           unsigned threads = 0);

/// max over x in U of: |lambda_z - lambda'_z| for shared z, lambda_z for z
/// only in a, lambda'_z for z only in b. Exact when both systems are.
DistanceResult distance_intensity(const ReactionSystem& a, const ReactionSystem& b,
                                  std::span<const StateVector> set, std::string set_label = {});

}  // namespace crn
