#pragma once

#include "crn/core.hpp"
#include "crn/network_io.hpp"

#include <random>
#include <set>

namespace crn::testing {

inline ReactionSystem example_main_system() {
  return parse_network(R"(species: X1 X2
0 -> X1 + X2 @ 2
2*X2 -> X1 + 3*X2 @ 1
X1 + X2 -> 2*X1 + 2*X2 @ 1
)");
}

/// Order-3 network used for the trajectory pipeline.
inline ReactionSystem example_order3_system() {
  return parse_network(R"(species: X1 X2
X1 -> 0 @ 1
0 -> X1 @ 1
X2 -> 0 @ 1
0 -> X2 @ 1
2*X1 + X2 -> 0 @ 1
0 -> X1 + X2 @ 1
X1 + X2 -> 2*X1 + 2*X2 @ 1
)");
}

inline ReactionSystem isomerization() {
  return parse_network("species: X1 X2\nX1 -> X2 @ 1\nX2 -> X1 @ 1\n");
}

inline ReactionSystem isomerization_order2() {
  return parse_network(R"(species: X1 X2
2*X1 -> X1 + X2 @ 1
X1 + X2 -> 2*X2 @ 1
2*X2 -> X1 + X2 @ 1
X1 + X2 -> 2*X1 @ 1
)");
}

/// Random mass-action system: d species, sources of order <= max_order,
/// products with entries in [0, max_order], kappa in {1/4, 1/2, ..., 4}.
inline ReactionSystem random_system(std::mt19937_64& rng, std::size_t d, Count max_order,
                                    std::size_t max_reactions = 6) {
  ReactionSystem sys(d);
  std::uniform_int_distribution<std::size_t> count(1, max_reactions);
  std::uniform_int_distribution<Count> entry(0, max_order);
  std::uniform_int_distribution<int> kappa_pick(0, 6);
  const Rate kappas[] = {Rate::exact(1, 4), Rate::exact(1, 2), Rate::exact(3, 4), Rate::exact(1),
                         Rate::exact(3, 2), Rate::exact(2), Rate::exact(4)};
  const std::size_t n = count(rng);
  for (std::size_t attempt = 0; sys.size() < n && attempt < 100; ++attempt) {
    std::vector<Count> src(d), dst(d);
    Count norm = 0;
    for (std::size_t i = 0; i < d; ++i) {
      src[i] = entry(rng);
      norm += src[i];
      dst[i] = entry(rng);
    }
    if (norm > max_order || src == dst) continue;
    ComplexVector s(src), t(dst);
    if (sys.find(s, t)) continue;
    sys.add(Reaction(s, t, kappas[kappa_pick(rng)]));
  }
  return sys;
}

inline ReactionSystem filter_by_order(const ReactionSystem& sys, Count max_order) {
  ReactionSystem out(sys.species());
  for (const auto& r : sys.reactions()) {
    if (reaction_order(r) <= max_order) out.add(r);
  }
  return out;
}

}  // namespace crn::testing
