#include "crn/simulate.hpp"


#include <algorithm>
#include <cmath>
#include <exception>
#include <set>
#include <stdexcept>
#include <thread>

namespace crn {

Trajectory::Trajectory(std::size_t id, const StateVector& initial, double horizon)
    : id_(id), dimension_(initial.size()), horizon_(horizon) {
  times_.push_back(0.0);
  states_.assign(initial.begin(), initial.end());
}

StateVector Trajectory::state_vector(std::size_t k) const {
  auto s = state(k);
  return StateVector(std::vector<Count>(s.begin(), s.end()));
}

std::span<const Count> Trajectory::state_at(double t) const {
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t k = it == times_.begin() ? 0 : static_cast<std::size_t>(it - times_.begin()) - 1;
  return state(k);
}

void Trajectory::append(double t, std::span<const Count> x) {
  if (x.size() != dimension_) {
    fail(ErrorCode::dimension_mismatch, "trajectory record has wrong dimension");
  }
  if (!(t > times_.back())) {
    fail(ErrorCode::invalid_argument, "trajectory " + std::to_string(id_) +
                                          ": jump times must increase strictly");
  }
  for (Count c : x) {
    if (c < 0) fail(ErrorCode::invalid_argument, "trajectory state has a negative count");
  }
  times_.push_back(t);
  states_.insert(states_.end(), x.begin(), x.end());
}

Simulator::Simulator(const ReactionSystem& sys) : dimension_(sys.dimension()) {
  for (const auto& r : sys.reactions()) {
    CompiledReaction c{r.rate_constant().to_double(), {}, {}};
    auto z = r.net_change();
    for (std::size_t i = 0; i < dimension_; ++i) {
      if (r.source()[i] > 0) c.reactants.push_back({i, r.source()[i]});
      if (z[i] != 0) c.delta.push_back({i, z[i]});
    }
    reactions_.push_back(std::move(c));
  }
}

double Simulator::intensities(std::span<const Count> x, std::span<double> out) const {
  double total = 0.0;
  for (std::size_t r = 0; r < reactions_.size(); ++r) {
    const auto& reaction = reactions_[r];
    double a = reaction.rate_constant;
    for (const auto& term : reaction.reactants) {
      const Count n = x[term.species];
      if (n < term.coefficient) {
        a = 0.0;
        break;
      }
      for (Count k = 0; k < term.coefficient; ++k) a *= static_cast<double>(n - k);
    }
    out[r] = a;
    total += a;
  }
  return total;
}

std::size_t Simulator::choose(std::span<const double> a, double target) const noexcept {
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r] <= 0.0) continue;
    last_positive = r;
    cumulative += a[r];
    if (target < cumulative) return r;
  }
  // Rounding can leave target at the very top of the cumulative sum.
  return last_positive;
}

void Simulator::apply(std::size_t reaction, std::vector<Count>& x) const {
  for (const auto& term : reactions_[reaction].delta) {
    x[term.species] += term.coefficient;
    if (x[term.species] < 0) throw std::logic_error("mass-action step produced a negative count");
  }
}

void Simulator::jump_cap(std::uint64_t max_jumps) {
  fail(ErrorCode::jump_cap_exceeded,
       "trajectory exceeded the jump cap of " + std::to_string(max_jumps) + " jumps");
}

Trajectory Simulator::run(const StateVector& x0, double t_end, std::uint64_t seed,
                          const SimulationOptions& options, std::size_t id) const {
  if (x0.size() != dimension_) {
    fail(ErrorCode::dimension_mismatch, "initial state has dimension " +
                                            std::to_string(x0.size()) + ", system has " +
                                            std::to_string(dimension_));
  }
  if (!(t_end > 0)) fail(ErrorCode::invalid_argument, "t_end must be positive");
  Trajectory traj(id, x0, t_end);
  auto outcome = walk(x0.values(), t_end, seed, options,
                      [&](double t, std::span<const Count> x) { traj.append(t, x); });
  traj.set_horizon(outcome.horizon);
  traj.set_absorbed(outcome.absorbed);
  return traj;
}

Trajectory simulate(const ReactionSystem& sys, const StateVector& x0, double t_end,
                    std::uint64_t seed, const SimulationOptions& options) {
  return Simulator(sys).run(x0, t_end, seed, options, 0);
}

std::vector<Trajectory> simulate_ensemble(const ReactionSystem& sys, const StateVector& x0,
                                          double t_end, std::size_t n, std::uint64_t base_seed,
                                          const SimulationOptions& options, unsigned threads) {
  if (n == 0) fail(ErrorCode::invalid_argument, "ensemble needs at least one realization");
  const Simulator simulator(sys);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

  std::vector<std::optional<Trajectory>> slots(n);
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned worker) {
    try {
      for (std::size_t i = worker; i < n; i += threads) {
        slots[i] = simulator.run(x0, t_end, stream_seed(base_seed, i), options, i);
      }
    } catch (...) {
      errors[worker] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Trajectory> out;
  out.reserve(n);
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

EnsembleMoments ensemble_moments(std::span<const Trajectory> trajs,
                                 std::span<const double> time_grid) {
  if (trajs.empty()) fail(ErrorCode::invalid_argument, "empty ensemble");
  const std::size_t d = trajs.front().dimension();
  for (const auto& tr : trajs) {
    if (tr.dimension() != d) fail(ErrorCode::dimension_mismatch, "mixed ensemble dimensions");
    for (double t : time_grid) {
      if (t < 0 || t > tr.horizon()) {
        fail(ErrorCode::invalid_argument, "grid time " + std::to_string(t) +
                                              " outside trajectory span");
      }
    }
  }
  EnsembleMoments m;
  m.time_grid.assign(time_grid.begin(), time_grid.end());
  m.n_realizations = trajs.size();
  m.mean.assign(d, std::vector<double>(time_grid.size(), 0.0));
  m.variance.assign(d, std::vector<double>(time_grid.size(), 0.0));
  const double n = static_cast<double>(trajs.size());
  for (std::size_t g = 0; g < time_grid.size(); ++g) {
    std::vector<double> sum(d, 0.0);
    for (const auto& tr : trajs) {
      auto x = tr.state_at(time_grid[g]);
      for (std::size_t i = 0; i < d; ++i) sum[i] += static_cast<double>(x[i]);
    }
    for (std::size_t i = 0; i < d; ++i) m.mean[i][g] = sum[i] / n;
    if (trajs.size() < 2) continue;
    std::vector<double> sq(d, 0.0);
    for (const auto& tr : trajs) {
      auto x = tr.state_at(time_grid[g]);
      for (std::size_t i = 0; i < d; ++i) {
        const double dev = static_cast<double>(x[i]) - m.mean[i][g];
        sq[i] += dev * dev;
      }
    }
    for (std::size_t i = 0; i < d; ++i) m.variance[i][g] = sq[i] / (n - 1.0);
  }
  return m;
}

EmpiricalDistribution empirical_distribution(
    std::span<const Trajectory> trajs, double t,
    const std::optional<std::vector<StateVector>>& restrict_to) {
  if (trajs.empty()) fail(ErrorCode::invalid_argument, "empty ensemble");
  for (const auto& tr : trajs) {
    if (t < 0 || t > tr.horizon()) {
      fail(ErrorCode::invalid_argument,
           "time " + std::to_string(t) + " beyond the span of trajectory " +
               std::to_string(tr.id()));
    }
  }
  std::map<StateVector, std::size_t> counts;
  for (const auto& tr : trajs) {
    auto x = tr.state_at(t);
    ++counts[StateVector(std::vector<Count>(x.begin(), x.end()))];
  }
  EmpiricalDistribution dist;
  dist.time = t;
  dist.n_realizations = trajs.size();
  const double n = static_cast<double>(trajs.size());
  if (!restrict_to) {
    for (const auto& [x, c] : counts) dist.support.emplace(x, static_cast<double>(c) / n);
    return dist;
  }
  std::set<StateVector> allowed(restrict_to->begin(), restrict_to->end());
  std::size_t outside = 0;
  for (const auto& [x, c] : counts) {
    if (allowed.count(x)) {
      dist.support.emplace(x, static_cast<double>(c) / n);
    } else {
      outside += c;
    }
  }
  dist.escaped_mass = static_cast<double>(outside) / n;
  return dist;
}

}  // namespace crn
