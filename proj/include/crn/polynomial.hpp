#pragma once

#include "crn/core.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace crn {

/// lambda(x) = sum_j c_j x^(x^j) over the falling-factorial basis of S_order.
struct RatePolynomial {
  Count order = 0;
  std::vector<Rate> coefficients;  // indexed like enumerate_simplex(d, order)
};

struct PolynomialFit {
  RatePolynomial polynomial;
  bool exact = true;
  /// max |M c - b| over the supplied states.
  double residual_max = 0.0;
  /// Smallest pivot magnitude met during elimination.
  double min_pivot = 0.0;
};

struct FitOptions {
  /// Float mode: a pivot below tolerance * max|M_ij| means singular.
  double pivot_tolerance = 1e-10;
};

/// Solves M c = b with M_ij = a^i^(x^j), rows the supplied states in
/// lexicographic order and columns the simplex S_n. Exact rationals when
/// every rate is exact, binary64 otherwise; partial pivoting in both.
PolynomialFit fit_polynomial(const std::map<StateVector, Rate>& rates_for_z, Count n,
                             const FitOptions& options = {});

/// Reads each positive coefficient c_j as the reaction x^j -> x^j + z with
/// rate constant c_j.
ReactionSystem polynomial_to_network(const std::map<TransitionVector, RatePolynomial>& polynomials,
                                     std::size_t dimension,
                                     const std::optional<std::vector<std::string>>& species = std::nullopt);

ReactionSystem polynomial_to_network(const std::map<TransitionVector, std::vector<Rate>>& coefficients,
                                     std::size_t dimension, Count n,
                                     const std::optional<std::vector<std::string>>& species = std::nullopt);

/// Evaluates a fitted polynomial at x.
Rate evaluate(const RatePolynomial& p, const StateVector& x);

}  // namespace crn
