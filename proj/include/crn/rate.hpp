#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

namespace crn {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// A non-negative kinetic quantity (rate constant, transition rate, fitted
/// coefficient) held either exactly as a rational or as a binary64 value.
///
/// Arithmetic between two exact values stays exact. As soon as one operand
/// is floating the result is floating. Comparisons follow the same rule:
/// exact pairs compare exactly, mixed pairs compare as doubles, so a double
/// written in shortest round-trip form and parsed back compares equal.
class Rate {
 public:
  Rate() : value_(Rational(0)) {}
  Rate(Rational value) : value_(std::move(value)) {}  // NOLINT
  Rate(const BigInt& value) : value_(Rational(value)) {}  // NOLINT
  Rate(int value) : value_(Rational(value)) {}  // NOLINT
  Rate(long value) : value_(Rational(value)) {}  // NOLINT
  Rate(long long value) : value_(Rational(value)) {}  // NOLINT
  Rate(double value) : value_(value) {}  // NOLINT

  static Rate exact(long long num, long long den = 1);

  bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const;
  double to_double() const;

  bool is_zero() const;
  int sign() const;

  Rate& operator+=(const Rate& rhs);
  Rate& operator-=(const Rate& rhs);
  Rate& operator*=(const Rate& rhs);
  Rate& operator/=(const Rate& rhs);

  friend Rate operator+(Rate lhs, const Rate& rhs) { return lhs += rhs; }
  friend Rate operator-(Rate lhs, const Rate& rhs) { return lhs -= rhs; }
  friend Rate operator*(Rate lhs, const Rate& rhs) { return lhs *= rhs; }
  friend Rate operator/(Rate lhs, const Rate& rhs) { return lhs /= rhs; }
  Rate operator-() const;

  friend bool operator==(const Rate& a, const Rate& b);
  friend std::partial_ordering operator<=>(const Rate& a, const Rate& b);

  /// `p`, `p/q` for exact values, shortest round-trip decimal otherwise.
  std::string str() const;

 private:
  std::variant<Rational, double> value_;
};

Rate abs(const Rate& r);

/// Parses `p`, `p/q` (exact) or a decimal/scientific literal (binary64).
/// Leading sign is accepted; range checks are left to the caller.
Rate parse_rate(std::string_view text);

std::ostream& operator<<(std::ostream& os, const Rate& r);

}  // namespace crn
