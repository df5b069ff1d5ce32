#include "crn/estimate.hpp"

#include "crn/random.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace crn {

std::uint64_t VisitIndex::hash(std::span<const Count> x) noexcept {
  std::uint64_t h = 0x243F6A8885A308D3ULL;
  for (Count c : x) h = SplitMix64::mix(h ^ static_cast<std::uint64_t>(c));
  return h;
}

VisitIndex::VisitIndex(std::size_t dimension, std::optional<std::vector<StateVector>> tracked,
                       bool record_entries)
    : dimension_(dimension), track_all_(!tracked), record_entries_(record_entries),
      buckets_(64, 0), z_scratch_(dimension) {
  if (tracked) {
    for (const auto& x : *tracked) {
      if (x.size() != dimension) fail(ErrorCode::dimension_mismatch, "tracked state has wrong dimension");
      state_slot(x.values(), true);
    }
  }
}

std::optional<std::size_t> VisitIndex::lookup(std::span<const Count> x) const {
  const std::size_t mask = buckets_.size() - 1;
  for (std::size_t b = hash(x) & mask;; b = (b + 1) & mask) {
    const std::size_t entry = buckets_[b];
    if (entry == 0) return std::nullopt;
    const auto& key = keys_[entry - 1];
    if (std::equal(x.begin(), x.end(), key.begin())) return entry - 1;
  }
}

void VisitIndex::rehash(std::size_t buckets) {
  buckets_.assign(buckets, 0);
  const std::size_t mask = buckets - 1;
  for (std::size_t slot = 0; slot < keys_.size(); ++slot) {
    std::size_t b = hash(keys_[slot]) & mask;
    while (buckets_[b] != 0) b = (b + 1) & mask;
    buckets_[b] = slot + 1;
  }
}

std::optional<std::size_t> VisitIndex::state_slot(std::span<const Count> x, bool create) {
  if (auto found = lookup(x)) return found;
  if (!create) return std::nullopt;
  const std::size_t slot = keys_.size();
  keys_.emplace_back(x.begin(), x.end());
  tallies_.emplace_back();
  if (2 * keys_.size() > buckets_.size()) {
    rehash(2 * buckets_.size());
  } else {
    const std::size_t mask = buckets_.size() - 1;
    std::size_t b = hash(x) & mask;
    while (buckets_[b] != 0) b = (b + 1) & mask;
    buckets_[b] = slot + 1;
  }
  return slot;
}

std::size_t VisitIndex::z_slot(std::span<const Count> z) {
  for (std::size_t i = 0; i < zs_.size(); ++i) {
    if (std::equal(z.begin(), z.end(), zs_[i].begin())) return i;
  }
  zs_.emplace_back(z.begin(), z.end());
  return zs_.size() - 1;
}

void VisitIndex::record(std::span<const Count> from, std::span<const Count> to, double holding,
                        std::size_t trajectory, std::size_t jump_index) {
  bool moved = false;
  for (std::size_t i = 0; i < dimension_; ++i) {
    z_scratch_[i] = to[i] - from[i];
    moved = moved || z_scratch_[i] != 0;
  }
  if (!moved) {
    fail(ErrorCode::invalid_argument, "trajectory " + std::to_string(trajectory) +
                                          " has a jump without state change");
  }
  const std::size_t zi = z_slot(z_scratch_);
  ++total_jumps_;
  auto slot = state_slot(from, track_all_);
  if (!slot) return;
  Tally& tally = tallies_[*slot];
  ++tally.visits;
  tally.holding_time += holding;
  if (tally.departures.size() <= zi) tally.departures.resize(zi + 1, 0);
  ++tally.departures[zi];
  if (record_entries_) tally.entries.push_back({trajectory, jump_index, holding});
}

void VisitIndex::add(const Trajectory& trajectory) {
  if (trajectory.dimension() != dimension_) {
    fail(ErrorCode::dimension_mismatch, "trajectory dimension differs from the index");
  }
  for (std::size_t k = 0; k + 1 < trajectory.record_count(); ++k) {
    record(trajectory.state(k), trajectory.state(k + 1), trajectory.time(k + 1) - trajectory.time(k),
           trajectory.id(), k);
  }
}

void VisitIndex::merge(const VisitIndex& other) {
  if (other.dimension_ != dimension_) fail(ErrorCode::dimension_mismatch, "cannot merge indices");
  std::vector<std::size_t> zmap(other.zs_.size());
  for (std::size_t i = 0; i < other.zs_.size(); ++i) zmap[i] = z_slot(other.zs_[i]);
  for (std::size_t s = 0; s < other.keys_.size(); ++s) {
    auto slot = state_slot(other.keys_[s], track_all_);
    if (!slot) continue;
    const Tally& src = other.tallies_[s];
    Tally& dst = tallies_[*slot];
    dst.visits += src.visits;
    dst.holding_time += src.holding_time;
    for (std::size_t i = 0; i < src.departures.size(); ++i) {
      if (dst.departures.size() <= zmap[i]) dst.departures.resize(zmap[i] + 1, 0);
      dst.departures[zmap[i]] += src.departures[i];
    }
    dst.entries.insert(dst.entries.end(), src.entries.begin(), src.entries.end());
  }
  total_jumps_ += other.total_jumps_;
}

std::size_t VisitIndex::visits(const StateVector& x) const {
  if (x.size() != dimension_) return 0;
  auto slot = lookup(x.values());
  return slot ? tallies_[*slot].visits : 0;
}

std::optional<StateVisits> VisitIndex::find(const StateVector& x) const {
  if (x.size() != dimension_) return std::nullopt;
  auto slot = lookup(x.values());
  if (!slot) return std::nullopt;
  const Tally& t = tallies_[*slot];
  StateVisits out{t.visits, t.holding_time, {}};
  for (std::size_t i = 0; i < t.departures.size(); ++i) {
    if (t.departures[i] > 0) out.departures.emplace(TransitionVector(zs_[i]), t.departures[i]);
  }
  return out;
}

std::vector<VisitEntry> VisitIndex::entries(const StateVector& x) const {
  if (x.size() != dimension_) return {};
  auto slot = lookup(x.values());
  return slot ? tallies_[*slot].entries : std::vector<VisitEntry>{};
}

std::vector<StateVector> VisitIndex::states() const {
  std::vector<StateVector> out;
  for (const auto& k : keys_) out.emplace_back(k);
  std::sort(out.begin(), out.end());
  return out;
}

std::set<TransitionVector> VisitIndex::transition_vectors() const {
  std::set<TransitionVector> out;
  for (const auto& z : zs_) out.emplace(z);
  return out;
}

std::set<TransitionVector> collect_transition_vectors(std::span<const Trajectory> trajs) {
  std::set<TransitionVector> out;
  for (const auto& tr : trajs) {
    std::vector<Count> z(tr.dimension());
    for (std::size_t k = 0; k + 1 < tr.record_count(); ++k) {
      auto a = tr.state(k);
      auto b = tr.state(k + 1);
      bool moved = false;
      for (std::size_t i = 0; i < z.size(); ++i) {
        z[i] = b[i] - a[i];
        moved = moved || z[i] != 0;
      }
      if (moved) out.emplace(z);
    }
  }
  return out;
}

EstimatedRates estimate_rates(const VisitIndex& index, std::span<const StateVector> states,
                              std::size_t min_visits, Coverage coverage) {
  if (min_visits < 1) fail(ErrorCode::invalid_argument, "min_visits must be at least 1");
  EstimatedRates est{RateTable(index.dimension()), {}, {}, {}, {}};
  const auto zs = index.transition_vectors();
  for (const auto& x : states) {
    if (x.size() != index.dimension()) fail(ErrorCode::dimension_mismatch, "state has wrong dimension");
    auto visits = index.find(x);
    const std::size_t n = visits ? visits->visits : 0;
    est.visits[x] = n;
    if (n < min_visits) {
      est.uncovered.push_back(x);
      continue;
    }
    const double total = static_cast<double>(n) / visits->holding_time;
    est.total_rate[x] = total;
    for (const auto& z : zs) {
      auto it = visits->departures.find(z);
      const std::size_t count = it == visits->departures.end() ? 0 : it->second;
      const double mean = static_cast<double>(count) / visits->holding_time;
      est.rates.set(z, x, Rate(mean));
      // Samples are 1{jump = z} * total; their n-1 variance in closed form.
      const double p = static_cast<double>(count) / static_cast<double>(n);
      const double variance =
          n > 1 ? total * total * p * (1.0 - p) * static_cast<double>(n) / static_cast<double>(n - 1)
                : 0.0;
      est.sigma[{z, x}] = std::sqrt(variance);
    }
  }
  if (coverage == Coverage::require && !est.uncovered.empty()) {
    std::string names;
    for (const auto& x : est.uncovered) {
      names += (names.empty() ? "" : " ") + format_vector(x.values()) + "[" +
               std::to_string(est.visits[x]) + "]";
    }
    fail(ErrorCode::insufficient_visits, "states below " + std::to_string(min_visits) +
                                             " visits: " + names);
  }
  return est;
}

EstimatedRates estimate_rates(std::span<const Trajectory> trajs, std::span<const StateVector> states,
                              std::size_t min_visits, Coverage coverage) {
  if (trajs.empty()) fail(ErrorCode::invalid_argument, "no trajectories");
  VisitIndex index(trajs.front().dimension(), std::vector<StateVector>(states.begin(), states.end()));
  for (const auto& tr : trajs) index.add(tr);
  return estimate_rates(index, states, min_visits, coverage);
}

double standard_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) fail(ErrorCode::invalid_argument, "quantile level must lie in (0,1)");
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00, 2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double low = 0.02425;
  double x = 0.0;
  if (p < low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // Halley refinement.
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

double two_sided_z(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorCode::invalid_argument, "alpha must lie in (0,1)");
  return standard_normal_quantile(1.0 - alpha / 2.0);
}

double confidence_epsilon(const EstimatedRates& est, double alpha) {
  const double z_alpha = two_sided_z(alpha);
  double eps = 0.0;
  for (const auto& [z, table] : est.rates.entries()) {
    for (const auto& [x, rate] : table) {
      auto s = est.sigma.find({z, x});
      auto v = est.visits.find(x);
      if (s == est.sigma.end() || v == est.visits.end() || v->second == 0) {
        fail(ErrorCode::invalid_argument, "no variance data for z=" + format_vector(z.values()) +
                                              " at x=" + format_vector(x.values()));
      }
      eps = std::max(eps, z_alpha * s->second / std::sqrt(static_cast<double>(v->second)));
    }
  }
  return eps;
}

TrajectoryInference infer_from_estimates(EstimatedRates estimate, Count n, double threshold) {
  if (threshold < 0) fail(ErrorCode::invalid_argument, "threshold must be non-negative");
  InferenceMode mode = StrictMode{};
  if (threshold > 0) mode = ClampMode{threshold};
  auto report = infer_on_simplex(estimate.rates, n, mode);
  return {std::move(estimate), std::move(report)};
}

TrajectoryInference infer_from_trajectories(const VisitIndex& index, Count n, double threshold,
                                            std::size_t min_visits) {
  const auto states = enumerate_simplex(index.dimension(), n);
  auto estimate = estimate_rates(index, states, min_visits, Coverage::require);
  return infer_from_estimates(std::move(estimate), n, threshold);
}

TrajectoryInference infer_from_trajectories(std::span<const Trajectory> trajs, Count n,
                                            double threshold, std::size_t min_visits) {
  if (trajs.empty()) fail(ErrorCode::invalid_argument, "no trajectories");
  const auto states = enumerate_simplex(trajs.front().dimension(), n);
  VisitIndex index(trajs.front().dimension(), states);
  for (const auto& tr : trajs) index.add(tr);
  return infer_from_trajectories(index, n, threshold, min_visits);
}

VisitIndex simulate_until_covered(const ReactionSystem& sys, const StateVector& x0,
                                  std::span<const StateVector> tracked, std::size_t min_visits,
                                  std::uint64_t seed, const CoverageRun& run) {
  const Simulator simulator(sys);
  VisitIndex index(sys.dimension(), std::vector<StateVector>(tracked.begin(), tracked.end()));
  SimulationOptions options;
  options.stop_after_jumps = run.restart_after_jumps;
  const double forever = std::numeric_limits<double>::infinity();
  auto covered = [&] {
    return std::all_of(tracked.begin(), tracked.end(),
                       [&](const StateVector& x) { return index.visits(x) >= min_visits; });
  };
  std::vector<Count> previous;
  for (std::size_t i = 0; i < run.max_trajectories; ++i) {
    // Streams the same path simulator.run() would record for realization i.
    previous.assign(x0.begin(), x0.end());
    double last_time = 0.0;
    std::size_t k = 0;
    simulator.walk(x0.values(), forever, stream_seed(seed, i), options,
                   [&](double t, std::span<const Count> x) {
                     index.record(previous, x, t - last_time, i, k++);
                     previous.assign(x.begin(), x.end());
                     last_time = t;
                   });
    if (covered()) return index;
  }
  fail(ErrorCode::insufficient_visits, "trajectory budget exhausted before every tracked state had " +
                                           std::to_string(min_visits) + " visits");
}

std::string format_estimated_rates(const EstimatedRates& est) {
  std::ostringstream os;
  const std::size_t d = est.rates.dimension();
  for (std::size_t i = 0; i < d; ++i) os << 'z' << i + 1 << ',';
  for (std::size_t i = 0; i < d; ++i) os << 'x' << i + 1 << ',';
  os << "rate,sigma,visits\n";
  for (const auto& [z, table] : est.rates.entries()) {
    for (const auto& [x, r] : table) {
      for (Count c : z) os << c << ',';
      for (Count c : x) os << c << ',';
      os << r.str() << ',' << Rate(est.sigma.at({z, x})).str() << ',' << est.visits.at(x) << '\n';
    }
  }
  return os.str();
}

void write_estimated_rates(const std::filesystem::path& path, const EstimatedRates& est) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::invalid_argument, path.string() + ": cannot write");
  out << format_estimated_rates(est);
}

}  // namespace crn
