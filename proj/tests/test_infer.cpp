#include "doctest.h"

#include "crn/infer.hpp"
#include "crn/rate_table.hpp"
#include "support.hpp"

#include <random>

using namespace crn;

namespace {

ErrorCode infer_code(const RateTable& table, Count n, InferenceMode mode = StrictMode{}) {
  try {
    infer_on_simplex(table, n, mode);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::invalid_argument;
}

RateTable main_example_table() {
  RateTable table(2);
  const TransitionVector z{1, 1};
  const std::vector<std::pair<StateVector, int>> rows{
      {{0, 0}, 2}, {{0, 1}, 2}, {{0, 2}, 4}, {{1, 0}, 2}, {{1, 1}, 3}, {{2, 0}, 2}};
  for (const auto& [x, r] : rows) table.set(z, x, Rate(r));
  return table;
}

ReactionSystem hyperplane_witness() {
  return parse_network(R"(species: X1 X2
2*X1 -> X1 + X2 @ 1
X1 + X2 -> 2*X2 @ 1
2*X2 -> X1 + X2 @ 1
X1 + X2 -> 2*X1 @ 1
)");
}

}  // namespace

TEST_CASE("worked example on S_2 is recovered") {
  auto report = infer_on_simplex(main_example_table(), 2);
  CHECK(systems_equal(report.system, testing::example_main_system()));
  CHECK(report.residual_max == 0.0);
  CHECK(report.rejected.empty());
  REQUIRE(report.coefficients.size() == 3);
  CHECK(report.coefficients[0].source == StateVector{0, 0});
  CHECK(report.coefficients[0].value == Rate(2));
  CHECK(report.coefficients[1].source == StateVector{0, 2});
  CHECK(report.coefficients[2].source == StateVector{1, 1});
}

TEST_CASE("degenerate and invalid rate tables") {
  RateTable zeros(2);
  for (const auto& x : enumerate_simplex(2, 2)) zeros.set(TransitionVector{1, 0}, x, Rate(0));
  CHECK(infer_on_simplex(zeros, 2).system.size() == 0);

  RateTable negative(2);
  for (const auto& x : enumerate_simplex(2, 2)) {
    negative.set(TransitionVector{1, 0}, x, x == StateVector{0, 0} ? Rate(1) : Rate(0));
  }
  CHECK(infer_code(negative, 2) == ErrorCode::non_realizable);

  RateTable missing = main_example_table();
  CHECK(infer_code(missing, 3) == ErrorCode::missing_rate);

  // Degradation out of the origin would need a negative product.
  RateTable invalid(1);
  for (const auto& x : enumerate_simplex(1, 1)) invalid.set(TransitionVector{-1}, x, Rate(1));
  CHECK(infer_code(invalid, 1) == ErrorCode::invalid_product);

  CHECK_THROWS_AS(RateTable(1).set(TransitionVector{1}, StateVector{0}, Rate(-1)), Error);
}

TEST_CASE("exact rates of the order-3 network round-trip") {
  auto sys = testing::example_order3_system();
  auto states = enumerate_simplex(2, 3);
  auto report = infer_on_simplex(RateTable::from_system(sys, states), 3);
  CHECK(systems_equal(report.system, sys));
  CHECK(report.residual_max == 0.0);
  CHECK(systems_agree_on(report.system, sys, states));
}

TEST_CASE("inference inverts rate computation on random systems") {
  std::mt19937_64 rng(2718);
  std::uniform_int_distribution<std::size_t> dim(1, 3);
  std::uniform_int_distribution<Count> order(0, 3);
  int checked = 0;
  for (int i = 0; i < 500; ++i) {
    const std::size_t d = dim(rng);
    const Count n = order(rng);
    auto sys = testing::random_system(rng, d, n);
    auto states = enumerate_simplex(d, n);
    auto report = infer_on_simplex(RateTable::from_system(sys, states), n);
    CHECK(systems_equal(report.system, sys));
    CHECK(systems_agree_on(report.system, sys, states));
    CHECK(report.residual_max == 0.0);
    ++checked;
  }
  CHECK(checked == 500);
}

TEST_CASE("lower-order inference yields the lower-order subsystem") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    auto sys = testing::random_system(rng, 2, 3, 8);
    for (Count n2 = 0; n2 < 3; ++n2) {
      auto report = infer_on_simplex(RateTable::from_system(sys, enumerate_simplex(2, n2)), n2);
      CHECK(systems_equal(report.system, testing::filter_by_order(sys, n2)));
      CHECK(is_subsystem(report.system, sys));
    }
  }
}

TEST_CASE("clamp mode tolerates noise") {
  auto sys = testing::example_order3_system();
  auto states = enumerate_simplex(2, 3);
  auto exact = RateTable::from_system(sys, states);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> jitter(-1e-5, 1e-5);
  RateTable noisy(2);
  for (const auto& [z, by_state] : exact.entries()) {
    for (const auto& [x, r] : by_state) {
      noisy.set(z, x, Rate(std::max(0.0, r.to_double() * (1.0 + jitter(rng)) + 1e-6)));
    }
  }
  auto report = infer_on_simplex(noisy, 3, ClampMode{});
  REQUIRE(report.system.size() == sys.size());
  for (const auto& r : sys.reactions()) {
    auto found = report.system.find(r.source(), r.target());
    REQUIRE(found);
    CHECK(std::abs(found->rate_constant().to_double() - 1.0) < 1e-3);
  }
  CHECK(report.threshold_used == doctest::Approx(1e-3));
  CHECK(report.residual_max < 1e-2);

  // Strict mode takes the noise floor at the origin as a reaction that
  // would leave the lattice.
  CHECK(infer_code(noisy, 3) == ErrorCode::invalid_product);
}

TEST_CASE("clamp mode: moderate negatives are clamped, large ones abort") {
  RateTable table(1);
  const TransitionVector z{1};
  table.set(z, StateVector{0}, Rate(1.0));
  table.set(z, StateVector{1}, Rate(0.98));  // c = -0.02, total 0.98
  auto report = infer_on_simplex(table, 1, ClampMode{});
  CHECK(report.system.size() == 1);
  REQUIRE(report.rejected.size() == 1);
  CHECK(report.rejected[0].state == StateVector{1});
  CHECK(report.rejected[0].value.to_double() == doctest::Approx(-0.02));

  RateTable bad(1);
  bad.set(z, StateVector{0}, Rate(1.0));
  bad.set(z, StateVector{1}, Rate(0.5));
  CHECK(infer_code(bad, 1, ClampMode{}) == ErrorCode::non_realizable);

  RateTable tiny(1);
  tiny.set(z, StateVector{0}, Rate(1.0));
  tiny.set(z, StateVector{1}, Rate(1.0005));
  auto small = infer_on_simplex(tiny, 1, ClampMode{});
  CHECK(small.system.size() == 1);
  CHECK(small.suppressed.size() == 1);
}

TEST_CASE("hyperplane construction reproduces rates") {
  const ConservationVector v{1, 1};
  auto plane = enumerate_hyperplane(v, 2);
  auto iso = testing::isomerization();
  auto witness = infer_on_hyperplane(RateTable::from_system(iso, plane), v, 2);
  CHECK(systems_equal(witness, hyperplane_witness()));
  CHECK(systems_agree_on(witness, iso, plane));
  CHECK_FALSE(systems_agree_on(witness, iso, enumerate_hyperplane(v, 4)));

  RateTable single(2);
  for (const auto& x : plane) {
    single.set(TransitionVector{-1, 1}, x, x == StateVector{2, 0} ? Rate(2) : Rate(0));
  }
  auto one = infer_on_hyperplane(single, v, 2);
  REQUIRE(one.size() == 1);
  CHECK(one.reactions()[0].source() == ComplexVector{2, 0});
  CHECK(one.reactions()[0].rate_constant() == Rate(1));

  RateTable partial(2);
  partial.set(TransitionVector{1, -1}, StateVector{0, 2}, Rate(1));
  CHECK_THROWS_AS(infer_on_hyperplane(partial, v, 2), Error);

  std::mt19937_64 rng(4);
  std::uniform_int_distribution<Count> weight(1, 3);
  std::uniform_int_distribution<Count> level(0, 6);
  for (int i = 0; i < 100; ++i) {
    ConservationVector w{weight(rng), weight(rng), weight(rng)};
    const Count n = level(rng);
    auto states = enumerate_hyperplane(w, n);
    auto sys = testing::random_system(rng, 3, 3);
    ReactionSystem conservative(3);
    for (const auto& r : sys.reactions()) {
      if (dot(w.values(), r.net_change().values()) == 0) conservative.add(r);
    }
    auto rebuilt = infer_on_hyperplane(RateTable::from_system(conservative, states), w, n);
    CHECK(systems_agree_on(rebuilt, conservative, states));
  }
}

TEST_CASE("agreement of systems on state sets") {
  auto a = testing::example_main_system();
  auto states = enumerate_simplex(2, 4);
  CHECK(systems_agree_on(a, a, states));
  CHECK_FALSE(systems_agree_on(a, testing::example_order3_system(), states));
  CHECK_THROWS_AS(systems_agree_on(a, ReactionSystem(3), states), Error);
}

TEST_CASE("rate CSV round-trips") {
  auto table = RateTable::from_system(testing::example_main_system(), enumerate_simplex(2, 2));
  table.set(TransitionVector{-1, 0}, StateVector{1, 0}, Rate(0.125));
  table.set(TransitionVector{-1, 0}, StateVector{2, 0}, Rate::exact(1, 3));
  auto text = format_rate_table(table);
  auto back = parse_rate_table(text, "mem");
  CHECK(format_rate_table(back) == text);
  CHECK(*back.get(TransitionVector{-1, 0}, StateVector{2, 0}) == Rate::exact(1, 3));
  CHECK(back.get(TransitionVector{1, 1}, StateVector{1, 1})->is_exact());

  auto extra = parse_rate_table("z1,x1,rate,sigma,visits\n1,0,2,0.1,50\n", "mem");
  CHECK(*extra.get(TransitionVector{1}, StateVector{0}) == Rate(2));
  CHECK_THROWS_AS(parse_rate_table("z1,x1,rate\n1,0,2\n1,0,3\n", "mem"), Error);
  CHECK_THROWS_AS(parse_rate_table("z1,x1,rate\n1,0,-2\n", "mem"), Error);
  CHECK_THROWS_AS(parse_rate_table("z1,x1,rate\n0,0,2\n", "mem"), Error);
}
