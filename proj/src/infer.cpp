#include "crn/infer.hpp"

#include <algorithm>
#include <cmath>

namespace crn {

namespace {

std::vector<std::string> names_for(std::size_t d, const std::optional<std::vector<std::string>>& species) {
  if (!species) return default_species_names(d);
  if (species->size() != d) fail(ErrorCode::dimension_mismatch, "species list has wrong length");
  return *species;
}

std::string key_text(const TransitionVector& z, const StateVector& x) {
  return "z=" + format_vector(z.values()) + " x=" + format_vector(x.values());
}

ComplexVector product_or_fail(const TransitionVector& z, const StateVector& x) {
  auto product = shifted(x, z);
  if (!product) {
    fail(ErrorCode::invalid_product, "reaction from " + format_vector(x.values()) + " along z=" +
                                         format_vector(z.values()) +
                                         " would leave the non-negative lattice");
  }
  return as_complex(*product);
}

}  // namespace

InferenceReport infer_on_simplex(const RateTable& rates, Count n, InferenceMode mode,
                                 const std::optional<std::vector<std::string>>& species) {
  if (n < 0) fail(ErrorCode::invalid_argument, "order bound must be non-negative");
  const std::size_t d = rates.dimension();
  const auto states = enumerate_simplex(d, n);
  const ClampMode* clamp = std::get_if<ClampMode>(&mode);

  InferenceReport report{ReactionSystem(names_for(d, species)), {}, {}, {}, 0.0,
                         clamp ? clamp->threshold : 0.0};

  // x^(x) for every simplex state; also the triangular factor x^(x^j).
  std::vector<Rate> self_factor;
  self_factor.reserve(states.size());
  for (const auto& x : states) self_factor.emplace_back(falling_factorial(x.values(), x.values()));

  std::vector<Reaction> emitted;
  for (const auto& [z, table] : rates.entries()) {
    std::vector<std::pair<std::size_t, Rate>> terms;  // (state index, c)
    for (std::size_t i = 0; i < states.size(); ++i) {
      const StateVector& x = states[i];
      auto it = table.find(x);
      if (it == table.end()) fail(ErrorCode::missing_rate, "missing rate for " + key_text(z, x));

      Rate previous(0);
      for (const auto& [j, c] : terms) {
        BigInt ff = falling_factorial(x.values(), states[j].values());
        if (ff != 0) previous += c * Rate(ff);
      }
      const Rate residual = it->second - previous;

      bool emit = false;
      if (!clamp) {
        if (residual.sign() < 0) {
          fail(ErrorCode::non_realizable, "negative coefficient " + (residual / self_factor[i]).str() +
                                              " for " + key_text(z, x));
        }
        emit = residual.sign() > 0;
      } else {
        const double scale = rates.total_rate(x).to_double();
        const double r = residual.to_double();
        const double tol = clamp->threshold * scale;
        if (std::abs(r) <= tol) {
          if (r < 0) report.rejected.push_back({z, x, residual / self_factor[i]});
          if (r > 0) report.suppressed.push_back({z, x, residual / self_factor[i]});
        } else if (r > tol) {
          emit = true;
        } else if (r >= -clamp->abort_fraction * scale) {
          report.rejected.push_back({z, x, residual / self_factor[i]});
        } else {
          fail(ErrorCode::non_realizable, "strongly negative coefficient " +
                                              (residual / self_factor[i]).str() + " for " +
                                              key_text(z, x));
        }
      }
      if (!emit) continue;

      Rate c = residual / self_factor[i];
      emitted.emplace_back(as_complex(x), product_or_fail(z, x), c);
      report.coefficients.push_back({z, i, x, c});
      terms.emplace_back(i, std::move(c));
    }
  }

  std::sort(emitted.begin(), emitted.end(), [](const Reaction& a, const Reaction& b) {
    if (a.source() != b.source()) return a.source() < b.source();
    return a.target() < b.target();
  });
  for (auto& r : emitted) report.system.add(std::move(r));

  double worst = 0.0;
  for (const auto& [z, table] : rates.entries()) {
    for (const auto& x : states) {
      const Rate diff = transition_rate(report.system, z, x) - table.at(x);
      worst = std::max(worst, std::abs(diff.to_double()));
    }
  }
  report.residual_max = worst;
  return report;
}

ReactionSystem infer_on_hyperplane(const RateTable& rates, const ConservationVector& v, Count n,
                                   const std::optional<std::vector<std::string>>& species) {
  const std::size_t d = rates.dimension();
  if (v.size() != d) fail(ErrorCode::dimension_mismatch, "conservation vector has wrong length");
  const auto states = enumerate_hyperplane(v, n);
  std::vector<Reaction> emitted;
  for (const auto& [z, table] : rates.entries()) {
    for (const auto& x : states) {
      auto it = table.find(x);
      if (it == table.end()) fail(ErrorCode::missing_rate, "missing rate for " + key_text(z, x));
      if (it->second.sign() <= 0) continue;
      Rate kappa = it->second / Rate(falling_factorial(x.values(), x.values()));
      emitted.emplace_back(as_complex(x), product_or_fail(z, x), std::move(kappa));
    }
  }
  std::sort(emitted.begin(), emitted.end(), [](const Reaction& a, const Reaction& b) {
    if (a.source() != b.source()) return a.source() < b.source();
    return a.target() < b.target();
  });
  return ReactionSystem(names_for(d, species), std::move(emitted));
}

bool systems_agree_on(const ReactionSystem& a, const ReactionSystem& b,
                      std::span<const StateVector> states) {
  if (a.dimension() != b.dimension()) {
    fail(ErrorCode::dimension_mismatch, "systems have different dimensions");
  }
  auto zs = a.transition_vectors();
  zs.merge(b.transition_vectors());
  for (const auto& z : zs) {
    for (const auto& x : states) {
      if (!(transition_rate(a, z, x) == transition_rate(b, z, x))) return false;
    }
  }
  return true;
}

}  // namespace crn
