#include "crn/distance.hpp"

#include "crn/random.hpp"
#include "crn/simulate.hpp"

#include <cmath>
#include <set>

namespace crn {

std::string_view to_string(Metric metric) {
  return metric == Metric::tv ? "tv" : "intensity";
}

DistanceResult distance_tv(const ReactionSystem& a, const ReactionSystem& b, const StateVector& x0a,
                           const StateVector& x0b, double t, std::span<const StateVector> set,
                           std::size_t n, std::uint64_t seed, std::string set_label,
                           unsigned threads) {
  if (a.dimension() != b.dimension()) {
    fail(ErrorCode::dimension_mismatch, "systems have different dimensions");
  }
  if (n < 1) fail(ErrorCode::invalid_argument, "need at least one realization");
  if (!(t > 0)) fail(ErrorCode::invalid_argument, "time must be positive");
  const std::vector<StateVector> u(set.begin(), set.end());

  const auto ens_a = simulate_ensemble(a, x0a, t, n, stream_seed(seed, 0), {}, threads);
  const auto ens_b = simulate_ensemble(b, x0b, t, n, stream_seed(seed, 1), {}, threads);
  const auto pa = empirical_distribution(ens_a, t, u);
  const auto pb = empirical_distribution(ens_b, t, u);

  double sum = 0.0;
  for (const auto& x : std::set<StateVector>(u.begin(), u.end())) {
    auto ia = pa.support.find(x);
    auto ib = pb.support.find(x);
    const double p = ia == pa.support.end() ? 0.0 : ia->second;
    const double q = ib == pb.support.end() ? 0.0 : ib->second;
    sum += std::abs(p - q);
  }
  DistanceResult out;
  out.metric = Metric::tv;
  out.set_label = std::move(set_label);
  out.set_size = u.size();
  out.value = 0.5 * sum;
  out.time = t;
  out.n_realizations = n;
  out.escaped_mass_a = pa.escaped_mass;
  out.escaped_mass_b = pb.escaped_mass;
  return out;
}

DistanceResult distance_intensity(const ReactionSystem& a, const ReactionSystem& b,
                                  std::span<const StateVector> set, std::string set_label) {
  if (a.dimension() != b.dimension()) {
    fail(ErrorCode::dimension_mismatch, "systems have different dimensions");
  }
  if (set.empty()) fail(ErrorCode::invalid_argument, "distance set U is empty");
  const auto za = a.transition_vectors();
  const auto zb = b.transition_vectors();
  std::set<TransitionVector> all = za;
  all.insert(zb.begin(), zb.end());

  Rate worst(0);
  for (const auto& x : set) {
    for (const auto& z : all) {
      const bool in_a = za.count(z) > 0;
      const bool in_b = zb.count(z) > 0;
      Rate gap(0);
      if (in_a && in_b) {
        gap = abs(transition_rate(a, z, x) - transition_rate(b, z, x));
      } else if (in_a) {
        gap = transition_rate(a, z, x);
      } else {
        gap = transition_rate(b, z, x);
      }
      if (gap > worst) worst = gap;
    }
  }
  DistanceResult out;
  out.metric = Metric::intensity;
  out.set_label = std::move(set_label);
  out.set_size = set.size();
  out.value = worst.to_double();
  return out;
}

}  // namespace crn
