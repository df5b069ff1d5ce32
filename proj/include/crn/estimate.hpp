#pragma once

#include "crn/core.hpp"
#include "crn/infer.hpp"
#include "crn/rate_table.hpp"
#include "crn/simulate.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace crn {

/// Sufficient statistics of the visits G_x to one state: the number of
/// departures observed, the summed holding times before them, and the
/// departures per transition vector.
struct StateVisits {
  std::size_t visits = 0;
  double holding_time = 0.0;
  std::map<TransitionVector, std::size_t> departures;
};

struct VisitEntry {
  std::size_t trajectory;
  std::size_t jump_index;  // k with a successor record k + 1
  double holding_time;
};

/// Fold of trajectories into per-state visit statistics. Only records with
/// a successor count (the final record of a path is censored). Adding
/// trajectories in any order and merging partial indices give the same
/// counts; holding-time sums agree up to floating-point association.
class VisitIndex {
 public:
  /// With `tracked`, statistics are kept only for those states; transition
  /// vectors are still collected from every jump.
  explicit VisitIndex(std::size_t dimension,
                      std::optional<std::vector<StateVector>> tracked = std::nullopt,
                      bool record_entries = false);

  std::size_t dimension() const noexcept { return dimension_; }

  void add(const Trajectory& trajectory);
  void merge(const VisitIndex& other);

  /// Folds a single departure from `from` to `to` after `holding` time units.
  void record(std::span<const Count> from, std::span<const Count> to, double holding,
              std::size_t trajectory = 0, std::size_t jump_index = 0);

  std::size_t visits(const StateVector& x) const;
  std::optional<StateVisits> find(const StateVector& x) const;
  /// Per-visit listing; empty unless constructed with record_entries.
  std::vector<VisitEntry> entries(const StateVector& x) const;
  std::vector<StateVector> states() const;
  std::set<TransitionVector> transition_vectors() const;
  std::size_t total_jumps() const noexcept { return total_jumps_; }

 private:
  struct Tally {
    std::size_t visits = 0;
    double holding_time = 0.0;
    std::vector<std::size_t> departures;  // indexed like zs_
    std::vector<VisitEntry> entries;
  };
  static std::uint64_t hash(std::span<const Count> x) noexcept;
  std::optional<std::size_t> lookup(std::span<const Count> x) const;
  std::optional<std::size_t> state_slot(std::span<const Count> x, bool create);
  std::size_t z_slot(std::span<const Count> z);
  void rehash(std::size_t buckets);

  std::size_t dimension_;
  bool track_all_;
  bool record_entries_;
  std::vector<std::vector<Count>> keys_;
  std::vector<Tally> tallies_;
  // Open-addressing table of slot + 1 (0 = empty), power-of-two sized.
  std::vector<std::size_t> buckets_;
  std::vector<std::vector<Count>> zs_;
  std::vector<Count> z_scratch_;
  std::size_t total_jumps_ = 0;
};

/// Distinct nonzero differences between consecutive records.
std::set<TransitionVector> collect_transition_vectors(std::span<const Trajectory> trajs);

struct EstimatedRates {
  /// Sample means lambda_z(x) for covered states and every observed z.
  RateTable rates;
  /// Sample standard deviation sigma_z(x) of the indicator-scaled samples.
  std::map<std::pair<TransitionVector, StateVector>, double> sigma;
  /// |G_x| per requested state (covered or not).
  std::map<StateVector, std::size_t> visits;
  /// Total intensity estimate |G_x| / sum of holding times.
  std::map<StateVector, double> total_rate;
  /// Requested states with fewer than min_visits visits; not in `rates`.
  std::vector<StateVector> uncovered;
};

enum class Coverage { flag, require };

/// lambda_z(x) = (#departures along z) / (sum of holding times at x).
EstimatedRates estimate_rates(const VisitIndex& index, std::span<const StateVector> states,
                              std::size_t min_visits, Coverage coverage = Coverage::flag);
EstimatedRates estimate_rates(std::span<const Trajectory> trajs, std::span<const StateVector> states,
                              std::size_t min_visits, Coverage coverage = Coverage::flag);

/// Inverse standard-normal CDF. Acklam's rational approximation (relative
/// error < 1.2e-9) followed by one Halley step against std::erfc.
double standard_normal_quantile(double p);

/// Two-sided radius z with P(-z <= Z <= z) = 1 - alpha.
double two_sided_z(double alpha);

/// max over covered (z, x) of z_alpha * sigma_z(x) / sqrt(|G_x|).
double confidence_epsilon(const EstimatedRates& est, double alpha);

struct TrajectoryInference {
  EstimatedRates estimate;
  InferenceReport report;
};

/// Estimates rates on S_n and infers with ClampMode{threshold}; threshold 0
/// selects strict mode.
TrajectoryInference infer_from_estimates(EstimatedRates estimate, Count n, double threshold);
TrajectoryInference infer_from_trajectories(const VisitIndex& index, Count n, double threshold,
                                            std::size_t min_visits);
TrajectoryInference infer_from_trajectories(std::span<const Trajectory> trajs, Count n,
                                            double threshold, std::size_t min_visits);

struct CoverageRun {
  std::size_t restart_after_jumps = 1000;
  std::size_t max_trajectories = 10'000'000;
};

/// Simulates restarted paths from x0 (path i seeded with stream_seed(seed, i),
/// stopped after `restart_after_jumps` jumps) until each tracked state has
/// at least min_visits visits. Throws InsufficientVisits when the
/// trajectory budget runs out first.
VisitIndex simulate_until_covered(const ReactionSystem& sys, const StateVector& x0,
                                  std::span<const StateVector> tracked, std::size_t min_visits,
                                  std::uint64_t seed, const CoverageRun& run = {});

/// `.rates.csv` with the extra columns `sigma,visits`.
std::string format_estimated_rates(const EstimatedRates& est);
void write_estimated_rates(const std::filesystem::path& path, const EstimatedRates& est);

}  // namespace crn
