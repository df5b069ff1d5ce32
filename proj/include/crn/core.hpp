#pragma once

#include "crn/error.hpp"
#include "crn/rate.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace crn {

using Count = std::int64_t;

/// Dense integer vector over the species coordinates. The tag fixes what
/// entries are admissible; ordering is lexicographic on the coordinates.
template <typename Tag>
class IntVector {
 public:
  IntVector() = default;
  explicit IntVector(std::vector<Count> values) : values_(std::move(values)) {
    Tag::validate(values_);
  }
  IntVector(std::initializer_list<Count> values) : IntVector(std::vector<Count>(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  Count operator[](std::size_t i) const { return values_[i]; }
  std::span<const Count> values() const noexcept { return values_; }
  const std::vector<Count>& vector() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  Count l1_norm() const {
    Count sum = 0;
    for (Count c : values_) sum += c < 0 ? -c : c;
    return sum;
  }

  friend bool operator==(const IntVector&, const IntVector&) = default;
  friend auto operator<=>(const IntVector&, const IntVector&) = default;

 private:
  std::vector<Count> values_;
};

namespace detail {
struct NonNegativeTag {
  static void validate(const std::vector<Count>& v);
};
struct ComplexTag : NonNegativeTag {};
struct StateTag : NonNegativeTag {};
struct TransitionTag {
  static void validate(const std::vector<Count>& v);
};
struct ConservationTag {
  static void validate(const std::vector<Count>& v);
};
}  // namespace detail

/// Stoichiometric coefficients of a complex.
using ComplexVector = IntVector<detail::ComplexTag>;
/// Molecule counts; a point of the non-negative lattice.
using StateVector = IntVector<detail::StateTag>;
/// Net change of a reaction; never all-zero.
using TransitionVector = IntVector<detail::TransitionTag>;
/// Strictly positive weights v with v . z = 0 for every reaction.
using ConservationVector = IntVector<detail::ConservationTag>;

ComplexVector as_complex(const StateVector& x);
StateVector as_state(const ComplexVector& y);
TransitionVector net_change(const ComplexVector& source, const ComplexVector& target);
/// x + z, or nullopt when a coordinate would turn negative.
std::optional<StateVector> shifted(const StateVector& x, const TransitionVector& z);

std::string format_vector(std::span<const Count> v);

class Reaction {
 public:
  Reaction(ComplexVector source, ComplexVector target, Rate rate_constant);

  const ComplexVector& source() const noexcept { return source_; }
  const ComplexVector& target() const noexcept { return target_; }
  const Rate& rate_constant() const noexcept { return rate_; }
  TransitionVector net_change() const { return crn::net_change(source_, target_); }
  std::size_t dimension() const noexcept { return source_.size(); }

 private:
  ComplexVector source_;
  ComplexVector target_;
  Rate rate_;
};

/// A mass-action reaction network with its rate constants.
class ReactionSystem {
 public:
  explicit ReactionSystem(std::size_t dimension);
  explicit ReactionSystem(std::vector<std::string> species, std::vector<Reaction> reactions = {});

  std::size_t dimension() const noexcept { return species_.size(); }
  const std::vector<std::string>& species() const noexcept { return species_; }
  const std::vector<Reaction>& reactions() const noexcept { return reactions_; }
  bool empty() const noexcept { return reactions_.empty(); }
  std::size_t size() const noexcept { return reactions_.size(); }

  /// Rejects a second reaction with the same (source, target).
  void add(Reaction reaction);
  const Reaction* find(const ComplexVector& source, const ComplexVector& target) const;
  std::set<TransitionVector> transition_vectors() const;

  /// Reactions reordered by (source, target), lexicographically.
  ReactionSystem sorted() const;

 private:
  std::vector<std::string> species_;
  std::vector<Reaction> reactions_;
};

std::vector<std::string> default_species_names(std::size_t dimension);

/// prod_i u_i (u_i - 1) ... (u_i - v_i + 1).
BigInt falling_factorial(std::span<const Count> u, std::span<const Count> v);
inline BigInt falling_factorial(const StateVector& u, const ComplexVector& v) {
  return falling_factorial(u.values(), v.values());
}

Rate intensity(const Reaction& r, const StateVector& x);
Rate transition_rate(const ReactionSystem& sys, const TransitionVector& z, const StateVector& x);

std::strong_ordering lex_compare(const StateVector& u, const StateVector& v);

/// Number of lattice points with l1-norm <= n in dimension d, i.e.
/// binomial(n + d, d); nullopt on 64-bit overflow.
std::optional<std::uint64_t> simplex_size(std::size_t d, Count n);

inline constexpr std::size_t default_enumeration_cap = 1'000'000;

/// All states with |x|_1 <= n in lexicographic order.
std::vector<StateVector> enumerate_simplex(std::size_t d, Count n,
                                           std::size_t cap = default_enumeration_cap);
/// All states with v . x = n in lexicographic order.
std::vector<StateVector> enumerate_hyperplane(const ConservationVector& v, Count n,
                                              std::size_t cap = default_enumeration_cap);

Count reaction_order(const Reaction& r);
Count system_order(const ReactionSystem& sys);
Count v_order(const Reaction& r, const ConservationVector& v);
Count system_v_order(const ReactionSystem& sys, const ConservationVector& v);

Count dot(std::span<const Count> a, std::span<const Count> b);
bool conserves(const ReactionSystem& sys, const ConservationVector& v);

struct ConservationSearch {
  Count bound = 100;
  std::size_t max_candidates = 2'000'000;
};

/// Searches the rational null space of the stoichiometric matrix for a
/// strictly positive integer vector with entries <= bound. The search is
/// incomplete beyond the bound; nullopt means "none found".
std::optional<ConservationVector> detect_conservation_laws(const ReactionSystem& sys,
                                                          ConservationSearch search = {});

bool is_subsystem(const ReactionSystem& a, const ReactionSystem& b);
bool systems_equal(const ReactionSystem& a, const ReactionSystem& b);

}  // namespace crn
