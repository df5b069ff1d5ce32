#include "crn/rate.hpp"

#include "crn/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <ostream>

namespace crn {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::jump_cap_exceeded: return "JumpCapExceeded";
    case ErrorCode::non_realizable: return "NonRealizable";
    case ErrorCode::invalid_product: return "InvalidProduct";
    case ErrorCode::negative_coefficient: return "NegativeCoefficient";
    case ErrorCode::missing_rate: return "MissingRate";
    case ErrorCode::insufficient_visits: return "InsufficientVisits";
    case ErrorCode::singular_matrix: return "SingularMatrix";
    case ErrorCode::wrong_count: return "WrongCount";
    case ErrorCode::unverified_conservation: return "UnverifiedConservation";
    case ErrorCode::enumeration_cap: return "EnumerationCap";
  }
  return "Unknown";
}

namespace {

double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  BigInt value = 0;
  for (char c : s) value = value * 10 + (c - '0');
  return negative ? BigInt(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rate Rate::exact(long long num, long long den) {
  if (den == 0) fail(ErrorCode::invalid_argument, "zero denominator");
  return Rate(Rational(num, den));
}

const Rational& Rate::rational() const {
  if (!is_exact()) fail(ErrorCode::invalid_argument, "rate is not exact");
  return std::get<Rational>(value_);
}

double Rate::to_double() const {
  if (is_exact()) return rational_to_double(std::get<Rational>(value_));
  return std::get<double>(value_);
}

bool Rate::is_zero() const { return sign() == 0; }

int Rate::sign() const {
  if (is_exact()) return std::get<Rational>(value_).sign();
  double v = std::get<double>(value_);
  return (v > 0) - (v < 0);
}

Rate& Rate::operator+=(const Rate& rhs) {
  if (is_exact() && rhs.is_exact()) {
    std::get<Rational>(value_) += std::get<Rational>(rhs.value_);
  } else {
    value_ = to_double() + rhs.to_double();
  }
  return *this;
}

Rate& Rate::operator-=(const Rate& rhs) {
  if (is_exact() && rhs.is_exact()) {
    std::get<Rational>(value_) -= std::get<Rational>(rhs.value_);
  } else {
    value_ = to_double() - rhs.to_double();
  }
  return *this;
}

Rate& Rate::operator*=(const Rate& rhs) {
  if (is_exact() && rhs.is_exact()) {
    std::get<Rational>(value_) *= std::get<Rational>(rhs.value_);
  } else {
    value_ = to_double() * rhs.to_double();
  }
  return *this;
}

Rate& Rate::operator/=(const Rate& rhs) {
  if (rhs.is_zero()) fail(ErrorCode::invalid_argument, "division by zero rate");
  if (is_exact() && rhs.is_exact()) {
    std::get<Rational>(value_) /= std::get<Rational>(rhs.value_);
  } else {
    value_ = to_double() / rhs.to_double();
  }
  return *this;
}

Rate Rate::operator-() const {
  if (is_exact()) return Rate(Rational(-std::get<Rational>(value_)));
  return Rate(-std::get<double>(value_));
}

bool operator==(const Rate& a, const Rate& b) {
  if (a.is_exact() && b.is_exact()) return a.rational() == b.rational();
  return a.to_double() == b.to_double();
}

std::partial_ordering operator<=>(const Rate& a, const Rate& b) {
  if (a.is_exact() && b.is_exact()) {
    const auto& x = a.rational();
    const auto& y = b.rational();
    if (x < y) return std::partial_ordering::less;
    if (y < x) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
  }
  return a.to_double() <=> b.to_double();
}

std::string Rate::str() const {
  if (is_exact()) {
    const auto& r = std::get<Rational>(value_);
    std::string out = boost::multiprecision::numerator(r).str();
    const BigInt den = boost::multiprecision::denominator(r);
    if (den != 1) out += "/" + den.str();
    return out;
  }
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), std::get<double>(value_));
  (void)ec;
  return std::string(buf, end);
}

Rate abs(const Rate& r) { return r.sign() < 0 ? -r : r; }

Rate parse_rate(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) fail(ErrorCode::parse_error, "empty rate literal");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = trim(s.substr(0, slash));
    auto den = trim(s.substr(slash + 1));
    if (!is_integer_literal(num) || !is_integer_literal(den)) {
      fail(ErrorCode::parse_error, "malformed rational literal '" + std::string(s) + "'");
    }
    BigInt d = parse_integer(den);
    if (d == 0) fail(ErrorCode::parse_error, "zero denominator in '" + std::string(s) + "'");
    return Rate(Rational(parse_integer(num), d));
  }
  if (is_integer_literal(s)) return Rate(Rational(parse_integer(s)));
  std::string_view body = s;
  if (body.front() == '+') body.remove_prefix(1);
  double value = 0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc() || ptr != body.data() + body.size() || !std::isfinite(value)) {
    fail(ErrorCode::parse_error, "malformed rate literal '" + std::string(s) + "'");
  }
  return Rate(value);
}

std::ostream& operator<<(std::ostream& os, const Rate& r) { return os << r.str(); }

}  // namespace crn
