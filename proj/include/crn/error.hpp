#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crn {

enum class ErrorCode {
  invalid_argument,
  dimension_mismatch,
  parse_error,
  jump_cap_exceeded,
  non_realizable,
  invalid_product,
  negative_coefficient,
  missing_rate,
  insufficient_visits,
  singular_matrix,
  wrong_count,
  unverified_conservation,
  enumeration_cap,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries a stable code so front ends
/// can map it to exit statuses without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace crn
