// crn: simulate, infer, check and compare stochastic mass-action networks.

#include "crn/distance.hpp"
#include "crn/estimate.hpp"
#include "crn/identifiability.hpp"
#include "crn/infer.hpp"
#include "crn/network_io.hpp"
#include "crn/polynomial.hpp"
#include "crn/rate_table.hpp"
#include "crn/simulate.hpp"
#include "crn/trajectory_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace crn;
using Clock = std::chrono::steady_clock;

constexpr const char* kExitCodes = R"(Exit codes:
  0  success
  1  usage, parse or dimension error
  2  jump cap exceeded during simulation
  3  NonRealizable, NegativeCoefficient or InvalidProduct
  4  MissingRate or InsufficientVisits
  5  SingularMatrix)";

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::jump_cap_exceeded:
      return 2;
    case ErrorCode::non_realizable:
    case ErrorCode::negative_coefficient:
    case ErrorCode::invalid_product:
      return 3;
    case ErrorCode::missing_rate:
    case ErrorCode::insufficient_visits:
      return 4;
    case ErrorCode::singular_matrix:
      return 5;
    default:
      return 1;
  }
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

Count parse_count(std::string_view text, std::string_view what) {
  auto values = parse_count_list(text);
  if (values.size() != 1) fail(ErrorCode::parse_error, "expected one integer for " + std::string(what));
  return values[0];
}

/// "1,0,2" (one entry per species) or "X1=1,X3=2" (unnamed species are 0).
StateVector parse_state(std::string_view text, const std::vector<std::string>& species) {
  if (text.find('=') == std::string_view::npos) {
    auto values = parse_count_list(text);
    if (values.size() != species.size()) {
      fail(ErrorCode::dimension_mismatch, "initial state '" + std::string(text) + "' has " +
                                              std::to_string(values.size()) + " entries, network has " +
                                              std::to_string(species.size()) + " species");
    }
    return StateVector(values);
  }
  std::vector<Count> values(species.size(), 0);
  for (auto item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) fail(ErrorCode::parse_error, "expected NAME=COUNT, got '" + std::string(item) + "'");
    const auto name = item.substr(0, eq);
    const auto it = std::find(species.begin(), species.end(), name);
    if (it == species.end()) fail(ErrorCode::parse_error, "unknown species '" + std::string(name) + "' in initial state");
    values[static_cast<std::size_t>(it - species.begin())] = parse_count(item.substr(eq + 1), name);
  }
  return StateVector(values);
}

/// simplex:N | hyperplane:v1,...,vd:N | full
StateSpace parse_space(std::string_view text, std::size_t dimension) {
  auto parts = split(text, ':');
  if (parts.size() == 1 && parts[0] == "full") return FullLattice{};
  if (parts.size() == 2 && parts[0] == "simplex") return SimplexSpace{parse_count(parts[1], "simplex level")};
  if (parts.size() == 3 && parts[0] == "hyperplane") {
    auto v = parse_count_list(parts[1]);
    if (v.size() != dimension) {
      fail(ErrorCode::dimension_mismatch, "conservation vector has " + std::to_string(v.size()) +
                                              " entries, network has " + std::to_string(dimension) + " species");
    }
    return HyperplaneSpace{ConservationVector(v), parse_count(parts[2], "hyperplane level")};
  }
  fail(ErrorCode::parse_error, "state space must be simplex:N, hyperplane:v1,...,vd:N or full; got '" +
                                   std::string(text) + "'");
}

std::vector<StateVector> space_states(const StateSpace& space, std::size_t dimension, std::string& label) {
  label = std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SimplexSpace>) return "simplex:" + std::to_string(s.n);
        else if constexpr (std::is_same_v<T, HyperplaneSpace>) {
          std::string v = format_vector(s.v.values());
          return "hyperplane:" + v.substr(1, v.size() - 2) + ":" + std::to_string(s.n);
        } else return "full";
      },
      space);
  if (auto* s = std::get_if<SimplexSpace>(&space)) return enumerate_simplex(dimension, s->n);
  if (auto* h = std::get_if<HyperplaneSpace>(&space)) return enumerate_hyperplane(h->v, h->n);
  fail(ErrorCode::invalid_argument, "a finite state set is required here, not the full lattice");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::invalid_argument, "cannot write " + path);
  out << text;
}

std::string describe_vector(const std::vector<Rate>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + values[i].str();
  return out + "]";
}

void print_inference_report(std::ostream& os, const InferenceReport& report) {
  os << "reactions: " << report.system.size() << '\n';
  const auto& species = report.system.species();
  for (const auto& r : report.system.reactions()) {
    os << "  " << format_complex(r.source(), species) << " -> " << format_complex(r.target(), species)
       << "  kappa=" << r.rate_constant().str() << '\n';
  }
  os << "residual_max: " << Rate(report.residual_max).str() << '\n';
  os << "threshold: " << Rate(report.threshold_used).str() << '\n';
  os << "clamped_negative: " << report.rejected.size() << '\n';
  for (const auto& c : report.rejected) {
    os << "  z=" << format_vector(c.z.values()) << " x=" << format_vector(c.state.values())
       << " c=" << c.value.str() << '\n';
  }
  os << "suppressed_small: " << report.suppressed.size() << '\n';
  for (const auto& c : report.suppressed) {
    os << "  z=" << format_vector(c.z.values()) << " x=" << format_vector(c.state.values())
       << " c=" << c.value.str() << '\n';
  }
}

/// Sends `result` to --out (then the report goes to stdout) or to stdout
/// (then the report goes to stderr).
void emit(const std::string& out_path, const std::string& result, const std::string& report) {
  if (out_path.empty()) {
    std::cout << result;
    std::cerr << report;
  } else {
    write_text(out_path, result);
    std::cout << report;
  }
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string network, init, out;
  double t_end = 0;
  std::size_t realizations = 1;
  std::uint64_t seed = 0;
  std::uint64_t stop_after = 0;
  std::uint64_t max_jumps = SimulationOptions{}.max_jumps;
  unsigned threads = 0;
};

int run_simulate(const SimulateArgs& a) {
  const auto start = Clock::now();
  auto sys = read_network(a.network);
  auto x0 = parse_state(a.init, sys.species());
  if (!(a.t_end > 0) || !std::isfinite(a.t_end)) fail(ErrorCode::invalid_argument, "--t-end must be positive and finite");
  if (a.realizations == 0) fail(ErrorCode::invalid_argument, "--realizations must be at least 1");
  SimulationOptions options;
  if (a.stop_after) options.stop_after_jumps = a.stop_after;
  options.max_jumps = a.max_jumps;
  auto trajs = simulate_ensemble(sys, x0, a.t_end, a.realizations, a.seed, options, a.threads);
  std::size_t jumps = 0;
  for (const auto& t : trajs) jumps += t.jump_count();
  std::ostringstream data, summary;
  write_trajectories(data, trajs);
  summary << "realizations: " << trajs.size() << "\njumps: " << jumps << "\nwall_seconds: " << seconds_since(start)
          << '\n';
  emit(a.out, data.str(), summary.str());
  return 0;
}

// ------------------------------------------------------------------- infer

struct InferArgs {
  std::string from, rates, traj, out, rates_out, species;
  Count order = 0;
  std::optional<double> threshold;
  std::size_t min_visits = 1;
  double alpha = 0.05;
};

std::optional<std::vector<std::string>> species_option(const std::string& text, std::size_t dimension) {
  if (text.empty()) return std::nullopt;
  std::vector<std::string> names;
  std::istringstream in(text);
  for (std::string name; in >> name;) names.push_back(name);
  if (names.size() != dimension) {
    fail(ErrorCode::dimension_mismatch, "--species lists " + std::to_string(names.size()) + " names, data has " +
                                            std::to_string(dimension) + " species");
  }
  return names;
}

int run_infer(const InferArgs& a) {
  std::ostringstream report;
  std::optional<InferenceReport> result;
  if (a.from == "rates") {
    if (a.rates.empty()) fail(ErrorCode::invalid_argument, "--from rates needs --rates FILE");
    auto table = read_rate_table(a.rates);
    const double threshold = a.threshold.value_or(0.0);
    InferenceMode mode = StrictMode{};
    if (threshold > 0) mode = ClampMode{threshold};
    result = infer_on_simplex(table, a.order, mode, species_option(a.species, table.dimension()));
    print_inference_report(report, *result);
  } else {
    if (a.traj.empty()) fail(ErrorCode::invalid_argument, "--from trajectories needs --traj FILE");
    auto trajs = read_trajectories(a.traj);
    if (trajs.empty()) fail(ErrorCode::invalid_argument, a.traj + ": no trajectories");
    VisitIndex index(trajs.front().dimension(), enumerate_simplex(trajs.front().dimension(), a.order));
    for (const auto& t : trajs) index.add(t);
    auto estimate = estimate_rates(index, enumerate_simplex(index.dimension(), a.order), a.min_visits,
                                   Coverage::require);
    if (!a.rates_out.empty()) write_estimated_rates(a.rates_out, estimate);
    auto inferred = infer_from_estimates(std::move(estimate), a.order, a.threshold.value_or(1e-3));
    result = std::move(inferred.report);
    if (auto names = species_option(a.species, index.dimension())) {
      ReactionSystem renamed(*names);
      for (const auto& r : result->system.reactions()) renamed.add(r);
      result->system = std::move(renamed);
    }
    print_inference_report(report, *result);
    std::size_t min_seen = std::numeric_limits<std::size_t>::max();
    for (const auto& [x, n] : inferred.estimate.visits) min_seen = std::min(min_seen, n);
    report << "min_visits_observed: " << min_seen << '\n';
    report << "epsilon(alpha=" << a.alpha << "): " << confidence_epsilon(inferred.estimate, a.alpha) << '\n';
  }
  emit(a.out, format_network(result->system), report.str());
  return 0;
}

// ------------------------------------------------------------------- check

struct CheckArgs {
  std::string network, space, witness_out, format = "text";
};

int run_check(const CheckArgs& a) {
  auto sys = read_network(a.network);
  auto space = parse_space(a.space, sys.dimension());
  auto verdict = check_identifiability(sys, space);
  std::string label;
  if (!std::holds_alternative<FullLattice>(space)) space_states(space, sys.dimension(), label);
  else label = "full";
  if (verdict.witness && !a.witness_out.empty()) write_network(a.witness_out, *verdict.witness);
  if (a.format == "json") {
    nlohmann::ordered_json j;
    j["network"] = a.network;
    j["space"] = label;
    j["identifiable"] = verdict.identifiable;
    j["reason"] = std::string(to_string(verdict.reason));
    j["order"] = system_order(sys);
    j["witness"] = verdict.witness ? nlohmann::ordered_json(format_network(*verdict.witness)) : nlohmann::ordered_json();
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << (verdict.identifiable ? "identifiable" : "NOT identifiable") << '\n';
    std::cout << "reason: " << to_string(verdict.reason) << '\n';
    std::cout << "space: " << label << '\n';
    if (verdict.witness) {
      std::cout << "witness:\n" << format_network(*verdict.witness);
      if (!a.witness_out.empty()) std::cout << "witness written to " << a.witness_out << '\n';
    }
  }
  return 0;
}

// ----------------------------------------------------------------- compare

struct CompareArgs {
  std::string a, b, metric = "intensity", set, init_a, init_b;
  double t = 0;
  std::size_t realizations = 10000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

void print_distance(std::ostream& os, const DistanceResult& d) {
  os << "metric: " << to_string(d.metric) << "\nset: " << d.set_label << "\nset_size: " << d.set_size
     << "\nvalue: " << Rate(d.value).str() << '\n';
  if (d.metric == Metric::tv) {
    os << "t: " << Rate(*d.time).str() << "\nrealizations: " << *d.n_realizations
       << "\nescaped_mass_a: " << Rate(d.escaped_mass_a).str() << "\nescaped_mass_b: " << Rate(d.escaped_mass_b).str()
       << '\n';
  }
}

int run_compare(const CompareArgs& a) {
  auto sa = read_network(a.a);
  auto sb = read_network(a.b);
  if (sa.dimension() != sb.dimension()) {
    fail(ErrorCode::dimension_mismatch, a.a + " has " + std::to_string(sa.dimension()) + " species, " + a.b +
                                            " has " + std::to_string(sb.dimension()));
  }
  std::string label;
  auto states = space_states(parse_space(a.set, sa.dimension()), sa.dimension(), label);
  if (a.metric == "intensity") {
    print_distance(std::cout, distance_intensity(sa, sb, states, label));
    return 0;
  }
  if (!a.seed) fail(ErrorCode::invalid_argument, "--metric tv needs --seed");
  if (a.init_a.empty() || a.init_b.empty()) fail(ErrorCode::invalid_argument, "--metric tv needs --init-a and --init-b");
  if (!(a.t > 0)) fail(ErrorCode::invalid_argument, "--metric tv needs --t > 0");
  auto x0a = parse_state(a.init_a, sa.species());
  auto x0b = parse_state(a.init_b, sb.species());
  print_distance(std::cout, distance_tv(sa, sb, x0a, x0b, a.t, states, a.realizations, *a.seed, label, a.threads));
  return 0;
}

// ---------------------------------------------------------------- fit-poly

struct FitArgs {
  std::string rates, out, species;
  Count order = 0;
  double pivot_tolerance = FitOptions{}.pivot_tolerance;
};

int run_fit_poly(const FitArgs& a) {
  auto table = read_rate_table(a.rates);
  const std::size_t d = table.dimension();
  std::map<TransitionVector, RatePolynomial> polys;
  std::ostringstream report;
  for (const auto& [z, by_state] : table.entries()) {
    // Each z is fitted at the largest order N' <= --order whose basis size
    // matches its number of states.
    std::optional<Count> level;
    std::string expected;
    for (Count n = 0; n <= a.order; ++n) {
      const auto size = simplex_size(d, n);
      expected += (n ? ", " : "") + std::to_string(*size);
      if (*size == by_state.size()) level = n;
    }
    if (!level) {
      fail(ErrorCode::wrong_count, "z=" + format_vector(z.values()) + " has " + std::to_string(by_state.size()) +
                                       " states; expected one of {" + expected + "} for order <= " +
                                       std::to_string(a.order));
    }
    PolynomialFit fit;
    try {
      fit = fit_polynomial(by_state, *level, FitOptions{a.pivot_tolerance});
    } catch (const Error& e) {
      fail(e.code(), "z=" + format_vector(z.values()) + ": " + e.what());
    }
    report << "z=" << format_vector(z.values()) << " order=" << *level << " c=" << describe_vector(fit.polynomial.coefficients)
           << " exact=" << (fit.exact ? "yes" : "no") << " min_pivot=" << Rate(fit.min_pivot).str()
           << " residual_max=" << Rate(fit.residual_max).str() << '\n';
    polys.emplace(z, fit.polynomial);
  }
  auto sys = polynomial_to_network(polys, d, species_option(a.species, d));
  emit(a.out, format_network(sys), report.str());
  return 0;
}

// ---------------------------------------------------------------- pipeline

struct PipelineArgs {
  std::string network, init, out, rates_out;
  Count order = 0;
  std::size_t min_visits = 100000;
  std::uint64_t seed = 0;
  std::size_t restart_after = CoverageRun{}.restart_after_jumps;
  double threshold = 1e-3;
  double alpha = 0.05;
  double tv_t = 0;
  std::size_t tv_realizations = 10000;
  unsigned threads = 0;
};

int run_pipeline(const PipelineArgs& a) {
  const auto start = Clock::now();
  auto sys = read_network(a.network);
  auto x0 = parse_state(a.init, sys.species());
  auto states = enumerate_simplex(sys.dimension(), a.order);
  CoverageRun run;
  run.restart_after_jumps = a.restart_after;
  auto index = simulate_until_covered(sys, x0, states, a.min_visits, a.seed, run);
  auto inferred = infer_from_trajectories(index, a.order, a.threshold, a.min_visits);
  ReactionSystem named(sys.species());
  for (const auto& r : inferred.report.system.reactions()) named.add(r);
  inferred.report.system = std::move(named);
  if (!a.rates_out.empty()) write_estimated_rates(a.rates_out, inferred.estimate);

  std::ostringstream report;
  report << "jumps_simulated: " << index.total_jumps() << '\n';
  print_inference_report(report, inferred.report);
  const double eps = confidence_epsilon(inferred.estimate, a.alpha);
  auto di = distance_intensity(sys, inferred.report.system, states, "simplex:" + std::to_string(a.order));
  report << "epsilon(alpha=" << a.alpha << "): " << eps << '\n';
  report << "intensity_distance: " << di.value << '\n';
  report << "intensity_within_epsilon: " << (di.value <= eps ? "yes" : "no") << '\n';
  if (a.tv_t > 0) {
    auto tv = distance_tv(sys, inferred.report.system, x0, x0, a.tv_t, states, a.tv_realizations,
                          stream_seed(a.seed, 1u << 20), di.set_label, a.threads);
    report << "tv_distance: " << tv.value << '\n';
    report << "tv_escaped_mass: " << tv.escaped_mass_a << ' ' << tv.escaped_mass_b << '\n';
  }
  report << "wall_seconds: " << seconds_since(start) << '\n';
  emit(a.out, format_network(inferred.report.system), report.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic mass-action reaction networks: simulation, inference from rates or trajectories, "
               "identifiability checks and distances."};
  app.footer(kExitCodes);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Simulate realizations with the Gillespie direct method");
  simulate_cmd->add_option("--network", sim.network, "Network file (.crn)")->required();
  simulate_cmd->add_option("--init", sim.init, "Initial state: 1,0,2 or X1=1,X3=2")->required();
  simulate_cmd->add_option("--t-end", sim.t_end, "Time horizon")->required();
  simulate_cmd->add_option("--realizations", sim.realizations, "Number of realizations")->capture_default_str();
  simulate_cmd->add_option("--seed", sim.seed, "Base seed (realization i uses stream i)")->required();
  simulate_cmd->add_option("--out", sim.out, "Trajectory CSV path (default: stdout)");
  simulate_cmd->add_option("--stop-after-jumps", sim.stop_after, "Stop each realization after this many jumps");
  simulate_cmd->add_option("--max-jumps", sim.max_jumps, "Abort (exit 2) beyond this many jumps")->capture_default_str();
  simulate_cmd->add_option("--threads", sim.threads, "Worker threads, 0 = all cores; output does not depend on it");

  InferArgs inf;
  auto* infer_cmd = app.add_subcommand("infer", "Infer a mass-action network from rates or trajectories on S_N");
  infer_cmd->add_option("--from", inf.from, "Input kind")->required()->check(CLI::IsMember({"rates", "trajectories"}));
  infer_cmd->add_option("--rates", inf.rates, "Rate table (.rates.csv) for --from rates");
  infer_cmd->add_option("--traj", inf.traj, "Trajectory CSV for --from trajectories");
  infer_cmd->add_option("--order", inf.order, "Simplex level N")->required();
  infer_cmd->add_option("--threshold", inf.threshold,
                        "Clamp threshold relative to the total rate at each state "
                        "(default 0 = strict for rates, 1e-3 for trajectories)");
  infer_cmd->add_option("--min-visits", inf.min_visits, "Visits required at every state of S_N")->capture_default_str();
  infer_cmd->add_option("--alpha", inf.alpha, "Confidence level for epsilon")->capture_default_str();
  infer_cmd->add_option("--species", inf.species, "Species names, space separated (default X1..Xd)");
  infer_cmd->add_option("--out", inf.out, "Inferred network path (default: stdout)");
  infer_cmd->add_option("--rates-out", inf.rates_out, "Write estimated rates with sigma and visits");

  CheckArgs chk;
  auto* check_cmd = app.add_subcommand("check", "Decide identifiability of a network on a state space");
  check_cmd->add_option("--network", chk.network, "Network file (.crn)")->required();
  check_cmd->add_option("--space", chk.space, "simplex:N | hyperplane:v1,...,vd:N | full")->required();
  check_cmd->add_option("--witness-out", chk.witness_out, "Write the witness network here when not identifiable");
  check_cmd->add_option("--format", chk.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  CompareArgs cmp;
  auto* compare_cmd = app.add_subcommand("compare", "Distance between two networks over a finite state set");
  compare_cmd->add_option("--a", cmp.a, "First network")->required();
  compare_cmd->add_option("--b", cmp.b, "Second network")->required();
  compare_cmd->add_option("--metric", cmp.metric, "tv or intensity")->check(CLI::IsMember({"tv", "intensity"}))->capture_default_str();
  compare_cmd->add_option("--set", cmp.set, "simplex:N or hyperplane:v1,...,vd:N")->required();
  compare_cmd->add_option("--t", cmp.t, "Time of the distributions (tv)");
  compare_cmd->add_option("--realizations", cmp.realizations, "Realizations per network (tv)")->capture_default_str();
  compare_cmd->add_option("--seed", cmp.seed, "Base seed (tv)");
  compare_cmd->add_option("--init-a", cmp.init_a, "Initial state of the first network (tv)");
  compare_cmd->add_option("--init-b", cmp.init_b, "Initial state of the second network (tv)");
  compare_cmd->add_option("--threads", cmp.threads, "Worker threads (tv)");

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit-poly", "Fit falling-factorial rate polynomials and read off a network");
  fit_cmd->add_option("--rates", fit.rates, "Rate table; each z needs binomial(N'+d,d) states for some N' <= N")->required();
  fit_cmd->add_option("--order", fit.order, "Maximum polynomial order N")->required();
  fit_cmd->add_option("--pivot-tolerance", fit.pivot_tolerance, "Relative pivot tolerance for decimal data")->capture_default_str();
  fit_cmd->add_option("--species", fit.species, "Species names, space separated (default X1..Xd)");
  fit_cmd->add_option("--out", fit.out, "Network path (default: stdout)");

  PipelineArgs pipe;
  auto* pipeline_cmd = app.add_subcommand("pipeline", "Simulate until S_N is covered, infer, and compare with the source");
  pipeline_cmd->add_option("--network", pipe.network, "Source network (.crn)")->required();
  pipeline_cmd->add_option("--init", pipe.init, "Restart state of every path")->required();
  pipeline_cmd->add_option("--order", pipe.order, "Simplex level N")->required();
  pipeline_cmd->add_option("--seed", pipe.seed, "Base seed")->required();
  pipeline_cmd->add_option("--min-visits", pipe.min_visits, "Visits required at every state of S_N")->capture_default_str();
  pipeline_cmd->add_option("--restart-after", pipe.restart_after, "Jumps per path before restarting")->capture_default_str();
  pipeline_cmd->add_option("--threshold", pipe.threshold, "Clamp threshold")->capture_default_str();
  pipeline_cmd->add_option("--alpha", pipe.alpha, "Confidence level for epsilon")->capture_default_str();
  pipeline_cmd->add_option("--tv-t", pipe.tv_t, "Also report the tv distance at this time");
  pipeline_cmd->add_option("--tv-realizations", pipe.tv_realizations, "Realizations per network for tv")->capture_default_str();
  pipeline_cmd->add_option("--threads", pipe.threads, "Worker threads for tv");
  pipeline_cmd->add_option("--out", pipe.out, "Inferred network path (default: stdout)");
  pipeline_cmd->add_option("--rates-out", pipe.rates_out, "Write estimated rates with sigma and visits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*simulate_cmd) return run_simulate(sim);
    if (*infer_cmd) return run_infer(inf);
    if (*check_cmd) return run_check(chk);
    if (*compare_cmd) return run_compare(cmp);
    if (*fit_cmd) return run_fit_poly(fit);
    if (*pipeline_cmd) return run_pipeline(pipe);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
