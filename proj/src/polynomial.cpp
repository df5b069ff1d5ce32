#include "crn/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>

namespace crn {

namespace {

template <typename Scalar>
struct Elimination {
  std::vector<Scalar> solution;
  double min_pivot = 0.0;
};

double magnitude(const Rational& r) { return std::abs(r.convert_to<double>()); }
double magnitude(double v) { return std::abs(v); }
bool is_zero(const Rational& r) { return r == 0; }

// Gaussian elimination with partial pivoting; `tolerance` is an absolute
// pivot floor (0 for exact arithmetic).
template <typename Scalar>
std::optional<Elimination<Scalar>> solve(std::vector<std::vector<Scalar>> m, std::vector<Scalar> b,
                                         double tolerance) {
  const std::size_t n = b.size();
  Elimination<Scalar> out;
  out.min_pivot = std::numeric_limits<double>::infinity();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (magnitude(m[r][col]) > magnitude(m[best][col])) best = r;
    }
    if constexpr (std::is_same_v<Scalar, Rational>) {
      if (is_zero(m[best][col])) return std::nullopt;
    } else {
      if (magnitude(m[best][col]) <= tolerance) return std::nullopt;
    }
    out.min_pivot = std::min(out.min_pivot, magnitude(m[best][col]));
    std::swap(m[best], m[col]);
    std::swap(b[best], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Scalar factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
      b[r] -= factor * b[col];
    }
  }
  out.solution.assign(n, Scalar(0));
  for (std::size_t i = n; i-- > 0;) {
    Scalar acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= m[i][c] * out.solution[c];
    out.solution[i] = acc / m[i][i];
  }
  return out;
}

}  // namespace

PolynomialFit fit_polynomial(const std::map<StateVector, Rate>& rates_for_z, Count n,
                             const FitOptions& options) {
  if (rates_for_z.empty()) fail(ErrorCode::wrong_count, "no states supplied");
  const std::size_t d = rates_for_z.begin()->first.size();
  const auto basis = enumerate_simplex(d, n);
  if (rates_for_z.size() != basis.size()) {
    fail(ErrorCode::wrong_count, "a degree-" + std::to_string(n) + " fit in dimension " +
                                     std::to_string(d) + " needs exactly " +
                                     std::to_string(basis.size()) + " states, got " +
                                     std::to_string(rates_for_z.size()));
  }

  std::vector<std::vector<BigInt>> m;
  std::vector<Rate> b;
  bool exact = true;
  for (const auto& [a, rate] : rates_for_z) {
    if (a.size() != d) fail(ErrorCode::dimension_mismatch, "states of mixed dimension");
    std::vector<BigInt> row;
    for (const auto& x : basis) row.push_back(falling_factorial(a.values(), x.values()));
    m.push_back(std::move(row));
    b.push_back(rate);
    exact = exact && rate.is_exact();
  }

  PolynomialFit fit;
  fit.polynomial.order = n;
  fit.exact = exact;
  const std::size_t size = basis.size();

  if (exact) {
    std::vector<std::vector<Rational>> mq(size, std::vector<Rational>(size));
    std::vector<Rational> bq(size);
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) mq[i][j] = Rational(m[i][j]);
      bq[i] = b[i].rational();
    }
    auto solved = solve(mq, bq, 0.0);
    if (!solved) fail(ErrorCode::singular_matrix, "falling-factorial matrix is singular");
    fit.min_pivot = solved->min_pivot;
    Rational worst = 0;
    for (std::size_t i = 0; i < size; ++i) {
      Rational acc = -bq[i];
      for (std::size_t j = 0; j < size; ++j) acc += mq[i][j] * solved->solution[j];
      if (acc < 0) acc = -acc;
      worst = std::max(worst, acc);
    }
    fit.residual_max = worst.convert_to<double>();
    for (auto& c : solved->solution) fit.polynomial.coefficients.emplace_back(std::move(c));
    return fit;
  }

  std::vector<std::vector<double>> mf(size, std::vector<double>(size));
  std::vector<double> bf(size);
  double m_max = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      mf[i][j] = m[i][j].convert_to<double>();
      m_max = std::max(m_max, std::abs(mf[i][j]));
    }
    bf[i] = b[i].to_double();
  }
  auto solved = solve(mf, bf, options.pivot_tolerance * m_max);
  if (!solved) fail(ErrorCode::singular_matrix, "falling-factorial matrix is numerically singular");
  fit.min_pivot = solved->min_pivot;
  double worst = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    double acc = -bf[i];
    for (std::size_t j = 0; j < size; ++j) acc += mf[i][j] * solved->solution[j];
    worst = std::max(worst, std::abs(acc));
  }
  fit.residual_max = worst;
  // Round-off noise around zero would otherwise surface as spurious
  // negative coefficients.
  double c_max = 0.0;
  for (double c : solved->solution) c_max = std::max(c_max, std::abs(c));
  for (double& c : solved->solution) {
    if (std::abs(c) <= 1e-9 * c_max) c = 0.0;
  }
  for (double c : solved->solution) fit.polynomial.coefficients.emplace_back(c);
  return fit;
}

ReactionSystem polynomial_to_network(const std::map<TransitionVector, RatePolynomial>& polynomials,
                                     std::size_t dimension,
                                     const std::optional<std::vector<std::string>>& species) {
  ReactionSystem sys(species ? *species : default_species_names(dimension));
  std::vector<Reaction> emitted;
  for (const auto& [z, p] : polynomials) {
    if (z.size() != dimension) fail(ErrorCode::dimension_mismatch, "transition vector has wrong length");
    const auto basis = enumerate_simplex(dimension, p.order);
    if (p.coefficients.size() != basis.size()) {
      fail(ErrorCode::wrong_count, "coefficient vector for z=" + format_vector(z.values()) +
                                       " must have " + std::to_string(basis.size()) + " entries");
    }
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Rate& c = p.coefficients[j];
      if (c.sign() < 0) {
        fail(ErrorCode::negative_coefficient,
             "coefficient " + c.str() + " of x^(" + format_vector(basis[j].values()) +
                 ") for z=" + format_vector(z.values()) + " is negative");
      }
      if (c.sign() == 0) continue;
      auto product = shifted(basis[j], z);
      if (!product) {
        fail(ErrorCode::invalid_product,
             "term x^(" + format_vector(basis[j].values()) + ") charges z=" +
                 format_vector(z.values()) + " with a negative product complex");
      }
      emitted.emplace_back(as_complex(basis[j]), as_complex(*product), c);
    }
  }
  std::sort(emitted.begin(), emitted.end(), [](const Reaction& a, const Reaction& b) {
    if (a.source() != b.source()) return a.source() < b.source();
    return a.target() < b.target();
  });
  for (auto& r : emitted) sys.add(std::move(r));
  return sys;
}

ReactionSystem polynomial_to_network(const std::map<TransitionVector, std::vector<Rate>>& coefficients,
                                     std::size_t dimension, Count n,
                                     const std::optional<std::vector<std::string>>& species) {
  std::map<TransitionVector, RatePolynomial> polys;
  for (const auto& [z, c] : coefficients) polys.emplace(z, RatePolynomial{n, c});
  return polynomial_to_network(polys, dimension, species);
}

Rate evaluate(const RatePolynomial& p, const StateVector& x) {
  const auto basis = enumerate_simplex(x.size(), p.order);
  if (basis.size() != p.coefficients.size()) {
    fail(ErrorCode::wrong_count, "polynomial coefficient count does not match its order");
  }
  Rate total(0);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (p.coefficients[j].is_zero()) continue;
    total += p.coefficients[j] * Rate(falling_factorial(x.values(), basis[j].values()));
  }
  return total;
}

}  // namespace crn
