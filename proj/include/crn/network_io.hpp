#pragma once

#include "crn/core.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace crn {

// Line-oriented network text (.crn):
//
//   species: X1 X2
//   2*X2 -> X1 + 3*X2 @ 1      # comment
//   0 -> X1 @ 1/4
//
// Integers and p/q rates are kept exact; decimal literals become binary64.

ReactionSystem parse_network(std::string_view text, std::string_view origin = "<input>");
ReactionSystem read_network(const std::filesystem::path& path);

std::string format_complex(const ComplexVector& y, const std::vector<std::string>& species);
std::string format_network(const ReactionSystem& sys);
void write_network(const std::filesystem::path& path, const ReactionSystem& sys);

/// Comma-separated integer list, e.g. "1,1" or "4".
std::vector<Count> parse_count_list(std::string_view text);

}  // namespace crn
