#pragma once

#include "crn/core.hpp"
#include "crn/random.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace crn {

/// One CTMC sample path: record 0 is the initial state at t = 0, every
/// further record is a jump (time, new state). States are stored flat.
class Trajectory {
 public:
  Trajectory(std::size_t id, const StateVector& initial, double horizon);

  std::size_t id() const noexcept { return id_; }
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t record_count() const noexcept { return times_.size(); }
  std::size_t jump_count() const noexcept { return times_.size() - 1; }

  double time(std::size_t k) const { return times_[k]; }
  std::span<const Count> state(std::size_t k) const {
    return {states_.data() + k * dimension_, dimension_};
  }
  StateVector state_vector(std::size_t k) const;

  /// State held at time t (last record with time <= t).
  std::span<const Count> state_at(double t) const;

  /// Appends a jump; times must increase strictly and counts stay >= 0.
  void append(double t, std::span<const Count> x);

  /// Simulated time span; states are known on [0, horizon].
  double horizon() const noexcept { return horizon_; }
  void set_horizon(double horizon) noexcept { horizon_ = horizon; }
  /// True when the path reached a state with zero total intensity.
  bool absorbed() const noexcept { return absorbed_; }
  void set_absorbed(bool absorbed) noexcept { absorbed_ = absorbed; }

 private:
  std::size_t id_;
  std::size_t dimension_;
  double horizon_;
  bool absorbed_ = false;
  std::vector<double> times_;
  std::vector<Count> states_;
};

struct SimulationOptions {
  std::optional<std::uint64_t> stop_after_jumps;
  std::uint64_t max_jumps = 100'000'000;
};

/// Direct-method SSA compiled from a ReactionSystem. Rate constants are
/// evaluated in binary64; each jump consumes two uniforms from a
/// xoshiro256** stream: one for the exponential holding time, one for the
/// cumulative-intensity scan in reaction order.
class Simulator {
 public:
  explicit Simulator(const ReactionSystem& sys);

  std::size_t dimension() const noexcept { return dimension_; }

  Trajectory run(const StateVector& x0, double t_end, std::uint64_t seed,
                 const SimulationOptions& options = {}, std::size_t id = 0) const;

  struct WalkOutcome {
    double horizon;
    bool absorbed;
    std::uint64_t jumps;
  };

  /// Same path as run() without materializing it: `on_jump(t, x)` sees the
  /// jump time and the post-jump state; `x` is only valid during the call.
  template <typename OnJump>
  WalkOutcome walk(std::span<const Count> x0, double t_end, std::uint64_t seed,
                   const SimulationOptions& options, OnJump&& on_jump) const;

  /// Fills `out` with per-reaction intensities at x; returns their sum.
  double intensities(std::span<const Count> x, std::span<double> out) const;

 private:
  struct Term {
    std::size_t species;
    Count coefficient;
  };
  struct CompiledReaction {
    double rate_constant;
    std::vector<Term> reactants;
    std::vector<Term> delta;
  };

  std::size_t choose(std::span<const double> a, double target) const noexcept;
  void apply(std::size_t reaction, std::vector<Count>& x) const;
  [[noreturn]] static void jump_cap(std::uint64_t max_jumps);

  std::size_t dimension_;
  std::vector<CompiledReaction> reactions_;
};

template <typename OnJump>
Simulator::WalkOutcome Simulator::walk(std::span<const Count> x0, double t_end, std::uint64_t seed,
                                       const SimulationOptions& options, OnJump&& on_jump) const {
  Xoshiro256 rng(seed);
  std::vector<Count> x(x0.begin(), x0.end());
  std::vector<double> a(reactions_.size());
  double t = 0.0;
  std::uint64_t jumps = 0;
  while (true) {
    if (options.stop_after_jumps && jumps >= *options.stop_after_jumps) return {t, false, jumps};
    const double total = intensities(x, a);
    if (total <= 0.0) return {t_end, true, jumps};
    const double dt = -std::log(rng.uniform_open_zero()) / total;
    const double target = rng.uniform() * total;
    if (t + dt > t_end) return {t_end, false, jumps};
    if (jumps >= options.max_jumps) jump_cap(options.max_jumps);
    apply(choose(a, target), x);
    const double next = t + dt;
    // A holding time below the spacing of doubles at t cannot be recorded.
    t = next > t ? next : std::nextafter(t, std::numeric_limits<double>::infinity());
    on_jump(t, std::span<const Count>(x));
    ++jumps;
  }
}

Trajectory simulate(const ReactionSystem& sys, const StateVector& x0, double t_end,
                    std::uint64_t seed, const SimulationOptions& options = {});

/// Realization i uses stream_seed(base_seed, i) and carries id i. The
/// result does not depend on `threads` (0 = hardware concurrency).
std::vector<Trajectory> simulate_ensemble(const ReactionSystem& sys, const StateVector& x0,
                                          double t_end, std::size_t n, std::uint64_t base_seed,
                                          const SimulationOptions& options = {},
                                          unsigned threads = 0);

struct EnsembleMoments {
  std::vector<double> time_grid;
  /// mean[species][grid index]
  std::vector<std::vector<double>> mean;
  /// Unbiased (n - 1) sample variance, same layout as mean.
  std::vector<std::vector<double>> variance;
  std::size_t n_realizations = 0;
};

EnsembleMoments ensemble_moments(std::span<const Trajectory> trajs,
                                 std::span<const double> time_grid);

struct EmpiricalDistribution {
  double time = 0;
  std::map<StateVector, double> support;
  /// Probability of states outside the restriction set (0 if unrestricted).
  double escaped_mass = 0;
  std::size_t n_realizations = 0;
};

EmpiricalDistribution empirical_distribution(
    std::span<const Trajectory> trajs, double t,
    const std::optional<std::vector<StateVector>>& restrict_to = std::nullopt);

}  // namespace crn
