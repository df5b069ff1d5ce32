#include "doctest.h"

#include "crn/distance.hpp"
#include "crn/estimate.hpp"
#include "crn/simulate.hpp"
#include "support.hpp"

#include <cmath>
#include <random>

using namespace crn;

namespace {

Trajectory path(std::vector<std::pair<double, std::vector<Count>>> records) {
  Trajectory traj(0, StateVector(records.front().second), records.back().first);
  for (std::size_t k = 1; k < records.size(); ++k) traj.append(records[k].first, records[k].second);
  traj.set_horizon(records.back().first);
  return traj;
}

}  // namespace

TEST_CASE("transition vectors are read off consecutive records") {
  auto sys = parse_network("species: X1 X2\nX1 -> 2*X1 @ 1\nX1 + X2 -> 2*X2 @ 1\n");
  SimulationOptions options;
  options.stop_after_jumps = 40;
  auto trajs = simulate_ensemble(sys, StateVector{3, 3}, 100.0, 10, 1, options, 1);
  CHECK(collect_transition_vectors(trajs) ==
        std::set<TransitionVector>{TransitionVector{1, 0}, TransitionVector{-1, 1}});

  std::vector<Trajectory> single{path({{0.0, {0, 0}}, {0.5, {1, 1}}})};
  CHECK(collect_transition_vectors(single) == std::set<TransitionVector>{TransitionVector{1, 1}});
  std::vector<Trajectory> still{Trajectory(0, StateVector{2, 2}, 3.0)};
  CHECK(collect_transition_vectors(still).empty());
}

TEST_CASE("plug-in identity on synthetic data") {
  // At x = (1): total rate 3 split 2:1 between +1 and -1; holding 1/3 each.
  const double h = 1.0 / 3.0;
  std::vector<Trajectory> trajs{
      path({{0.0, {1}}, {h, {2}}, {h + 1.0, {1}}, {2 * h + 1.0, {0}}}),
      path({{0.0, {1}}, {h, {2}}})};
  const std::vector<StateVector> states{{1}};
  auto est = estimate_rates(trajs, states, 1);
  CHECK(est.visits.at(StateVector{1}) == 3);
  CHECK(est.rates.get(TransitionVector{1}, StateVector{1})->to_double() == doctest::Approx(2.0));
  CHECK(est.rates.get(TransitionVector{-1}, StateVector{1})->to_double() == doctest::Approx(1.0));
  CHECK(est.total_rate.at(StateVector{1}) == doctest::Approx(3.0));

  // Sigma: n-1 sample variance of the samples 1{jump = z} * total.
  const double total = 3.0;
  for (const auto& [z, hits] : std::vector<std::pair<TransitionVector, int>>{{TransitionVector{1}, 2},
                                                                            {TransitionVector{-1}, 1}}) {
    std::vector<double> samples;
    for (int k = 0; k < 3; ++k) samples.push_back(k < hits ? total : 0.0);
    double mean = 0;
    for (double s : samples) mean += s / 3.0;
    double var = 0;
    for (double s : samples) var += (s - mean) * (s - mean) / 2.0;
    CHECK(est.sigma.at({z, StateVector{1}}) == doctest::Approx(std::sqrt(var)));
  }

  // The state (2) has no successor in the second path and one departure in the first.
  auto two = estimate_rates(trajs, std::vector<StateVector>{{2}, {7}}, 2);
  CHECK(two.visits.at(StateVector{2}) == 1);
  CHECK(two.uncovered == std::vector<StateVector>{{2}, {7}});
  try {
    estimate_rates(trajs, std::vector<StateVector>{{2}}, 2, Coverage::require);
    FAIL("expected InsufficientVisits");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::insufficient_visits);
    CHECK(std::string(e.what()).find("(2)") != std::string::npos);
  }
}

TEST_CASE("estimates are consistent for a birth process") {
  auto birth = parse_network("species: X1\n0 -> X1 @ 1\n");
  const std::vector<StateVector> tracked{{5}};
  CoverageRun run;
  run.restart_after_jumps = 6;
  auto index = simulate_until_covered(birth, StateVector{0}, tracked, 10000, 17, run);
  auto est = estimate_rates(index, tracked, 10000, Coverage::require);
  CHECK(std::abs(est.rates.get(TransitionVector{1}, StateVector{5})->to_double() - 1.0) < 0.05);
  // Single z: the indicator is always 1, so the sample spread vanishes.
  CHECK(est.sigma.at({TransitionVector{1}, StateVector{5}}) == 0.0);
  CHECK(confidence_epsilon(est, 0.05) == 0.0);
}

TEST_CASE("visit index merge matches sequential folding") {
  auto sys = testing::example_order3_system();
  SimulationOptions options;
  options.stop_after_jumps = 300;
  auto trajs = simulate_ensemble(sys, StateVector{1, 1}, 100.0, 8, 3, options, 1);
  VisitIndex all(2), left(2), right(2);
  for (std::size_t i = 0; i < trajs.size(); ++i) {
    all.add(trajs[i]);
    (i % 2 ? right : left).add(trajs[i]);
  }
  left.merge(right);
  CHECK(left.total_jumps() == all.total_jumps());
  CHECK(left.states() == all.states());
  for (const auto& x : all.states()) {
    auto a = *all.find(x);
    auto b = *left.find(x);
    CHECK(a.visits == b.visits);
    CHECK(a.departures == b.departures);
    CHECK(a.holding_time == doctest::Approx(b.holding_time));
  }

  VisitIndex listing(2, std::nullopt, true);
  listing.add(trajs[0]);
  auto x = trajs[0].state_vector(0);
  auto entries = listing.entries(x);
  REQUIRE(!entries.empty());
  CHECK(entries.front().jump_index == 0);
  CHECK(entries.front().holding_time == trajs[0].time(1));
}

TEST_CASE("normal quantiles") {
  CHECK(two_sided_z(0.05) == doctest::Approx(1.959963984540054).epsilon(1e-9));
  CHECK(std::round(two_sided_z(0.05) * 100) / 100 == 1.96);
  CHECK(standard_normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  for (double p : {1e-12, 1e-6, 0.01, 0.02425, 0.3, 0.7, 0.97575, 0.999, 1 - 1e-9}) {
    const double q = standard_normal_quantile(p);
    const double cdf = 0.5 * std::erfc(-q / std::sqrt(2.0));
    CHECK(std::abs(cdf - p) <= 1e-9 * std::min(p, 1 - p) + 1e-15);
  }
  CHECK_THROWS_AS(two_sided_z(0.0), Error);
  CHECK_THROWS_AS(two_sided_z(1.0), Error);
}

TEST_CASE("estimated rate CSV keeps sigma and visit columns") {
  const double h = 0.5;
  std::vector<Trajectory> trajs{path({{0.0, {1}}, {h, {2}}, {2 * h, {1}}, {3 * h, {0}}})};
  auto est = estimate_rates(trajs, std::vector<StateVector>{{1}}, 1);
  auto text = format_estimated_rates(est);
  CHECK(text.rfind("z1,x1,rate,sigma,visits\n", 0) == 0);
  auto back = parse_rate_table(text, "mem");
  CHECK(back.get(TransitionVector{1}, StateVector{1})->to_double() ==
        est.rates.get(TransitionVector{1}, StateVector{1})->to_double());
}

TEST_CASE("trajectory inference recovers a linear network") {
  auto sys = parse_network("species: X1\n0 -> X1 @ 2\nX1 -> 0 @ 1\n");
  auto states = enumerate_simplex(1, 1);
  auto index = simulate_until_covered(sys, StateVector{0}, states, 20000, 5);
  auto result = infer_from_trajectories(index, 1, 1e-3, 20000);
  REQUIRE(result.report.system.size() == 2);
  auto in = result.report.system.find(ComplexVector{0}, ComplexVector{1});
  auto out = result.report.system.find(ComplexVector{1}, ComplexVector{0});
  REQUIRE(in);
  REQUIRE(out);
  CHECK(std::abs(in->rate_constant().to_double() - 2.0) < 0.1);
  CHECK(std::abs(out->rate_constant().to_double() - 1.0) < 0.05);
  CHECK(result.estimate.uncovered.empty());

  try {
    infer_from_trajectories(index, 2, 1e-3, 20000);
    FAIL("expected InsufficientVisits");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::insufficient_visits);
  }
}

TEST_CASE("intensity distance") {
  auto a = testing::example_order3_system();
  auto s3 = enumerate_simplex(2, 3);
  CHECK(distance_intensity(a, a, s3).value == 0.0);

  auto birth = parse_network("species: X1\n0 -> X1 @ 1\n");
  auto death = parse_network("species: X1\nX1 -> 0 @ 2\n");
  const std::vector<StateVector> u{{0}, {1}};
  CHECK(distance_intensity(birth, death, u).value == 2.0);

  // Perturbing an order-3 constant by 1% is small on S_3 and large far out.
  auto perturbed = parse_network(R"(species: X1 X2
X1 -> 0 @ 1
0 -> X1 @ 1
X2 -> 0 @ 1
0 -> X2 @ 1
2*X1 + X2 -> 0 @ 101/100
0 -> X1 + X2 @ 1
X1 + X2 -> 2*X1 + 2*X2 @ 1
)");
  auto near = distance_intensity(a, perturbed, s3);
  CHECK(near.value == doctest::Approx(0.02));
  auto far = distance_intensity(a, perturbed, enumerate_simplex(2, 100));
  CHECK(far.value > 1000.0 * near.value);
  CHECK(far.set_size == 5151);

  std::mt19937_64 rng(12);
  auto u2 = enumerate_simplex(2, 4);
  for (int i = 0; i < 100; ++i) {
    auto p = testing::random_system(rng, 2, 3);
    auto q = testing::random_system(rng, 2, 3);
    auto r = testing::random_system(rng, 2, 3);
    const double pq = distance_intensity(p, q, u2).value;
    CHECK(pq == distance_intensity(q, p, u2).value);
    CHECK(pq <= distance_intensity(p, r, u2).value + distance_intensity(r, q, u2).value + 1e-12);
    CHECK(pq >= 0.0);
  }
}

TEST_CASE("total variation distance") {
  ReactionSystem empty(1);
  const std::vector<StateVector> u{{0}, {1}};
  auto apart = distance_tv(empty, empty, StateVector{0}, StateVector{1}, 1.0, u, 10, 1);
  CHECK(apart.value == 1.0);
  CHECK(apart.metric == Metric::tv);

  auto sys = testing::isomerization();
  auto plane = enumerate_hyperplane(ConservationVector{1, 1}, 4);
  const std::size_t n = 4000;
  auto same = distance_tv(sys, sys, StateVector{4, 0}, StateVector{4, 0}, 1.0, plane, n, 3);
  CHECK(same.value >= 0.0);
  CHECK(same.value <= 2.0 * std::sqrt(static_cast<double>(plane.size()) / n));
  CHECK(same.escaped_mass_a == 0.0);
  CHECK(*same.n_realizations == n);

  auto witness = testing::isomerization_order2();
  auto differ = distance_tv(sys, witness, StateVector{4, 0}, StateVector{4, 0}, 1.0, plane, n, 3);
  CHECK(differ.value > 0.1);
  CHECK(differ.value <= 1.0);

  auto partial = distance_tv(sys, sys, StateVector{4, 0}, StateVector{4, 0}, 1.0,
                             std::vector<StateVector>{{4, 0}}, 500, 3);
  CHECK(partial.escaped_mass_a > 0.0);
  CHECK(partial.escaped_mass_a < 1.0);
}
