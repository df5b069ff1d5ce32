#include "crn/core.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

namespace crn {

namespace detail {

void NonNegativeTag::validate(const std::vector<Count>& v) {
  for (Count c : v) {
    if (c < 0) fail(ErrorCode::invalid_argument, "negative entry in " + format_vector(v));
  }
}

void TransitionTag::validate(const std::vector<Count>& v) {
  if (std::all_of(v.begin(), v.end(), [](Count c) { return c == 0; })) {
    fail(ErrorCode::invalid_argument, "transition vector must be nonzero");
  }
}

void ConservationTag::validate(const std::vector<Count>& v) {
  if (v.empty()) fail(ErrorCode::invalid_argument, "conservation vector is empty");
  for (Count c : v) {
    if (c <= 0) {
      fail(ErrorCode::invalid_argument,
           "conservation vector must be strictly positive, got " + format_vector(v));
    }
  }
}

}  // namespace detail

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    fail(ErrorCode::dimension_mismatch, std::string(what) + ": dimension " + std::to_string(a) +
                                            " vs " + std::to_string(b));
  }
}

}  // namespace

std::string format_vector(std::span<const Count> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

ComplexVector as_complex(const StateVector& x) { return ComplexVector(x.vector()); }
StateVector as_state(const ComplexVector& y) { return StateVector(y.vector()); }

TransitionVector net_change(const ComplexVector& source, const ComplexVector& target) {
  require_same_size(source.size(), target.size(), "net_change");
  std::vector<Count> z(source.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = target[i] - source[i];
  return TransitionVector(std::move(z));
}

std::optional<StateVector> shifted(const StateVector& x, const TransitionVector& z) {
  require_same_size(x.size(), z.size(), "shifted");
  std::vector<Count> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = x[i] + z[i];
    if (out[i] < 0) return std::nullopt;
  }
  return StateVector(std::move(out));
}

Reaction::Reaction(ComplexVector source, ComplexVector target, Rate rate_constant)
    : source_(std::move(source)), target_(std::move(target)), rate_(std::move(rate_constant)) {
  require_same_size(source_.size(), target_.size(), "reaction");
  if (source_ == target_) {
    fail(ErrorCode::invalid_argument,
         "reaction source equals target " + format_vector(source_.values()));
  }
  if (rate_.sign() <= 0) {
    fail(ErrorCode::invalid_argument, "rate constant must be positive, got " + rate_.str());
  }
}

std::vector<std::string> default_species_names(std::size_t dimension) {
  std::vector<std::string> names;
  names.reserve(dimension);
  for (std::size_t i = 0; i < dimension; ++i) names.push_back("X" + std::to_string(i + 1));
  return names;
}

ReactionSystem::ReactionSystem(std::size_t dimension) : species_(default_species_names(dimension)) {
  if (dimension == 0) fail(ErrorCode::invalid_argument, "system needs at least one species");
}

ReactionSystem::ReactionSystem(std::vector<std::string> species, std::vector<Reaction> reactions)
    : species_(std::move(species)) {
  if (species_.empty()) fail(ErrorCode::invalid_argument, "system needs at least one species");
  for (auto& r : reactions) add(std::move(r));
}

void ReactionSystem::add(Reaction reaction) {
  require_same_size(reaction.dimension(), dimension(), "reaction vs system");
  if (find(reaction.source(), reaction.target()) != nullptr) {
    fail(ErrorCode::invalid_argument, "duplicate reaction " +
                                          format_vector(reaction.source().values()) + " -> " +
                                          format_vector(reaction.target().values()));
  }
  reactions_.push_back(std::move(reaction));
}

const Reaction* ReactionSystem::find(const ComplexVector& source,
                                     const ComplexVector& target) const {
  for (const auto& r : reactions_) {
    if (r.source() == source && r.target() == target) return &r;
  }
  return nullptr;
}

std::set<TransitionVector> ReactionSystem::transition_vectors() const {
  std::set<TransitionVector> out;
  for (const auto& r : reactions_) out.insert(r.net_change());
  return out;
}

ReactionSystem ReactionSystem::sorted() const {
  std::vector<Reaction> rs = reactions_;
  std::sort(rs.begin(), rs.end(), [](const Reaction& a, const Reaction& b) {
    if (a.source() != b.source()) return a.source() < b.source();
    return a.target() < b.target();
  });
  return ReactionSystem(species_, std::move(rs));
}

BigInt falling_factorial(std::span<const Count> u, std::span<const Count> v) {
  require_same_size(u.size(), v.size(), "falling_factorial");
  BigInt product = 1;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < v[i]) return 0;
    for (Count k = 0; k < v[i]; ++k) product *= (u[i] - k);
  }
  return product;
}

Rate intensity(const Reaction& r, const StateVector& x) {
  require_same_size(r.dimension(), x.size(), "intensity");
  BigInt ff = falling_factorial(x, r.source());
  if (ff == 0) return Rate(0);
  return r.rate_constant() * Rate(ff);
}

Rate transition_rate(const ReactionSystem& sys, const TransitionVector& z, const StateVector& x) {
  require_same_size(sys.dimension(), z.size(), "transition_rate");
  require_same_size(sys.dimension(), x.size(), "transition_rate");
  Rate total(0);
  for (const auto& r : sys.reactions()) {
    if (r.net_change() == z) total += intensity(r, x);
  }
  return total;
}

std::strong_ordering lex_compare(const StateVector& u, const StateVector& v) {
  require_same_size(u.size(), v.size(), "lex_compare");
  return u <=> v;
}

std::optional<std::uint64_t> simplex_size(std::size_t d, Count n) {
  if (n < 0) return 0;
  // binomial(n + d, d) built incrementally as binomial(n + k, k), k = 1..d.
  BigInt value = 1;
  for (std::size_t k = 1; k <= d; ++k) {
    value = value * (n + static_cast<Count>(k)) / k;
    if (value > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return value.convert_to<std::uint64_t>();
}

std::vector<StateVector> enumerate_simplex(std::size_t d, Count n, std::size_t cap) {
  if (d == 0) fail(ErrorCode::invalid_argument, "simplex dimension must be positive");
  if (n < 0) fail(ErrorCode::invalid_argument, "simplex radius must be non-negative");
  auto count = simplex_size(d, n);
  if (!count || *count > cap) {
    fail(ErrorCode::enumeration_cap, "simplex S_" + std::to_string(n) + " in dimension " +
                                         std::to_string(d) + " exceeds the cap of " +
                                         std::to_string(cap) + " states");
  }
  std::vector<StateVector> out;
  out.reserve(*count);
  std::vector<Count> x(d, 0);
  std::function<void(std::size_t, Count)> fill = [&](std::size_t i, Count budget) {
    if (i == d) {
      out.emplace_back(x);
      return;
    }
    for (Count c = 0; c <= budget; ++c) {
      x[i] = c;
      fill(i + 1, budget - c);
    }
    x[i] = 0;
  };
  fill(0, n);
  return out;
}

std::vector<StateVector> enumerate_hyperplane(const ConservationVector& v, Count n,
                                              std::size_t cap) {
  if (n < 0) fail(ErrorCode::invalid_argument, "hyperplane level must be non-negative");
  const std::size_t d = v.size();
  std::vector<StateVector> out;
  std::vector<Count> x(d, 0);
  std::function<void(std::size_t, Count)> fill = [&](std::size_t i, Count remaining) {
    if (i + 1 == d) {
      if (remaining % v[i] != 0) return;
      x[i] = remaining / v[i];
      if (out.size() >= cap) {
        fail(ErrorCode::enumeration_cap,
             "hyperplane exceeds the cap of " + std::to_string(cap) + " states");
      }
      out.emplace_back(x);
      return;
    }
    for (Count c = 0; c * v[i] <= remaining; ++c) {
      x[i] = c;
      fill(i + 1, remaining - c * v[i]);
    }
    x[i] = 0;
  };
  fill(0, n);
  return out;
}

Count reaction_order(const Reaction& r) { return r.source().l1_norm(); }

Count system_order(const ReactionSystem& sys) {
  Count order = 0;
  for (const auto& r : sys.reactions()) order = std::max(order, reaction_order(r));
  return order;
}

Count dot(std::span<const Count> a, std::span<const Count> b) {
  require_same_size(a.size(), b.size(), "dot");
  Count s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Count v_order(const Reaction& r, const ConservationVector& v) {
  return dot(v.values(), r.source().values());
}

Count system_v_order(const ReactionSystem& sys, const ConservationVector& v) {
  Count order = 0;
  for (const auto& r : sys.reactions()) order = std::max(order, v_order(r, v));
  return order;
}

bool conserves(const ReactionSystem& sys, const ConservationVector& v) {
  require_same_size(sys.dimension(), v.size(), "conserves");
  for (const auto& r : sys.reactions()) {
    if (dot(v.values(), r.net_change().values()) != 0) return false;
  }
  return true;
}

std::optional<ConservationVector> detect_conservation_laws(const ReactionSystem& sys,
                                                          ConservationSearch search) {
  const std::size_t d = sys.dimension();
  std::vector<std::vector<Rational>> rows;
  for (const auto& z : sys.transition_vectors()) {
    rows.emplace_back(z.begin(), z.end());
  }

  // Reduced row echelon form of the stoichiometric matrix (rows = z).
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < d && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const Rational lead = rows[rank][col];
    for (auto& e : rows[rank]) e /= lead;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Rational factor = rows[r][col];
      for (std::size_t c = 0; c < d; ++c) rows[r][c] -= factor * rows[rank][c];
    }
    pivot_cols.push_back(col);
    ++rank;
  }

  std::vector<std::size_t> free_cols;
  for (std::size_t col = 0; col < d; ++col) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), col) == pivot_cols.end()) {
      free_cols.push_back(col);
    }
  }
  if (free_cols.empty()) return std::nullopt;

  // Free coordinates range over 1..bound, enumerated by increasing sum so the
  // first hit is the primitive solution of smallest l1 weight on free entries.
  const std::size_t k = free_cols.size();
  std::vector<Count> free_values(k, 1);
  std::size_t tried = 0;
  std::optional<ConservationVector> found;

  auto evaluate = [&]() -> bool {
    std::vector<Count> v(d, 0);
    for (std::size_t j = 0; j < k; ++j) v[free_cols[j]] = free_values[j];
    for (std::size_t r = 0; r < rank; ++r) {
      Rational value = 0;
      for (std::size_t j = 0; j < k; ++j) value -= rows[r][free_cols[j]] * free_values[j];
      if (value <= 0 || boost::multiprecision::denominator(value) != 1) return false;
      const BigInt num = boost::multiprecision::numerator(value);
      if (num > search.bound) return false;
      v[pivot_cols[r]] = num.convert_to<Count>();
    }
    Count g = 0;
    for (Count c : v) g = std::gcd(g, c);
    for (Count& c : v) c /= g;
    ConservationVector candidate(std::move(v));
    if (!conserves(sys, candidate)) return false;
    found = std::move(candidate);
    return true;
  };

  std::function<bool(std::size_t, Count)> compose = [&](std::size_t j, Count remaining) -> bool {
    if (j + 1 == k) {
      if (remaining < 1 || remaining > search.bound) return false;
      free_values[j] = remaining;
      if (++tried > search.max_candidates) return true;
      return evaluate();
    }
    for (Count c = 1; c <= search.bound && remaining - c >= static_cast<Count>(k - j - 1); ++c) {
      free_values[j] = c;
      if (compose(j + 1, remaining - c)) return true;
    }
    return false;
  };

  const Count max_sum = search.bound * static_cast<Count>(k);
  for (Count sum = static_cast<Count>(k); sum <= max_sum; ++sum) {
    if (compose(0, sum)) break;
  }
  return found;
}

bool is_subsystem(const ReactionSystem& a, const ReactionSystem& b) {
  require_same_size(a.dimension(), b.dimension(), "is_subsystem");
  for (const auto& r : a.reactions()) {
    const Reaction* match = b.find(r.source(), r.target());
    if (match == nullptr || !(match->rate_constant() == r.rate_constant())) return false;
  }
  return true;
}

bool systems_equal(const ReactionSystem& a, const ReactionSystem& b) {
  return is_subsystem(a, b) && is_subsystem(b, a);
}

}  // namespace crn
