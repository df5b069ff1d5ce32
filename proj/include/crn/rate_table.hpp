#pragma once

#include "crn/core.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string_view>

namespace crn {

/// Transition-rate data lambda_z(x), keyed by transition vector then state.
class RateTable {
 public:
  using StateRates = std::map<StateVector, Rate>;

  explicit RateTable(std::size_t dimension);

  std::size_t dimension() const noexcept { return dimension_; }
  bool empty() const noexcept { return entries_.empty(); }

  /// Rejects duplicate keys, negative rates and wrong dimensions.
  void set(const TransitionVector& z, const StateVector& x, Rate rate);
  std::optional<Rate> get(const TransitionVector& z, const StateVector& x) const;

  const std::map<TransitionVector, StateRates>& entries() const noexcept { return entries_; }
  std::vector<TransitionVector> transition_vectors() const;
  /// Sum of the rates of every z recorded at x.
  Rate total_rate(const StateVector& x) const;
  bool all_exact() const;

  /// Exact transition rates of `sys` at each listed state, for every z of sys.
  static RateTable from_system(const ReactionSystem& sys, std::span<const StateVector> states);

 private:
  std::size_t dimension_;
  std::map<TransitionVector, StateRates> entries_;
};

// Rate CSV (.rates.csv): header `z1..zd,x1..xd,rate`, optionally followed by
// more columns (e.g. `sigma,visits`) which are ignored on input.
RateTable parse_rate_table(std::string_view text, std::string_view origin = "<input>");
RateTable read_rate_table(const std::filesystem::path& path);
std::string format_rate_table(const RateTable& table);
void write_rate_table(const std::filesystem::path& path, const RateTable& table);

}  // namespace crn
