#include "crn/rate_table.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace crn {

RateTable::RateTable(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) fail(ErrorCode::invalid_argument, "rate table needs dimension >= 1");
}

void RateTable::set(const TransitionVector& z, const StateVector& x, Rate rate) {
  if (z.size() != dimension_ || x.size() != dimension_) {
    fail(ErrorCode::dimension_mismatch, "rate table key has wrong dimension");
  }
  if (rate.sign() < 0) {
    fail(ErrorCode::invalid_argument, "negative rate " + rate.str() + " for z=" +
                                          format_vector(z.values()) + " at x=" +
                                          format_vector(x.values()));
  }
  auto [it, inserted] = entries_[z].emplace(x, std::move(rate));
  if (!inserted) {
    fail(ErrorCode::invalid_argument, "duplicate rate for z=" + format_vector(z.values()) +
                                          " at x=" + format_vector(x.values()));
  }
}

std::optional<Rate> RateTable::get(const TransitionVector& z, const StateVector& x) const {
  auto zit = entries_.find(z);
  if (zit == entries_.end()) return std::nullopt;
  auto xit = zit->second.find(x);
  if (xit == zit->second.end()) return std::nullopt;
  return xit->second;
}

std::vector<TransitionVector> RateTable::transition_vectors() const {
  std::vector<TransitionVector> out;
  for (const auto& [z, _] : entries_) out.push_back(z);
  return out;
}

Rate RateTable::total_rate(const StateVector& x) const {
  Rate total(0);
  for (const auto& [z, rates] : entries_) {
    if (auto it = rates.find(x); it != rates.end()) total += it->second;
  }
  return total;
}

bool RateTable::all_exact() const {
  for (const auto& [z, rates] : entries_) {
    for (const auto& [x, r] : rates) {
      if (!r.is_exact()) return false;
    }
  }
  return true;
}

RateTable RateTable::from_system(const ReactionSystem& sys, std::span<const StateVector> states) {
  RateTable table(sys.dimension());
  for (const auto& z : sys.transition_vectors()) {
    for (const auto& x : states) table.set(z, x, transition_rate(sys, z, x));
  }
  return table;
}

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    auto f = line.substr(start, comma == std::string_view::npos ? comma : comma - start);
    while (!f.empty() && f.front() == ' ') f.remove_prefix(1);
    while (!f.empty() && f.back() == ' ') f.remove_suffix(1);
    fields.push_back(f);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

RateTable parse_rate_table(std::string_view text, std::string_view origin) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::optional<RateTable> table;
  std::size_t d = 0;
  auto error = [&](const std::string& msg) {
    fail(ErrorCode::parse_error, std::string(origin) + ":" + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_csv(line);
    if (!table) {
      while (d < fields.size() && fields[d] == "z" + std::to_string(d + 1)) ++d;
      bool ok = d > 0 && fields.size() >= 2 * d + 1;
      for (std::size_t i = 0; ok && i < d; ++i) ok = fields[d + i] == "x" + std::to_string(i + 1);
      if (!ok || fields[2 * d] != "rate") error("expected header 'z1..zd,x1..xd,rate'");
      table.emplace(d);
      continue;
    }
    if (fields.size() < 2 * d + 1) error("expected at least " + std::to_string(2 * d + 1) + " fields");
    std::vector<Count> z(d), x(d);
    for (std::size_t i = 0; i < 2 * d; ++i) {
      Count& target = i < d ? z[i] : x[i - d];
      auto f = fields[i];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), target);
      if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) error("bad integer '" + std::string(f) + "'");
    }
    try {
      Rate rate = parse_rate(fields[2 * d]);
      table->set(TransitionVector(z), StateVector(x), std::move(rate));
    } catch (const Error& e) {
      error(e.what());
    }
  }
  if (!table) fail(ErrorCode::parse_error, std::string(origin) + ": missing header");
  return std::move(*table);
}

RateTable read_rate_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::parse_error, path.string() + ": cannot open");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_rate_table(buffer.str(), path.string());
}

std::string format_rate_table(const RateTable& table) {
  std::ostringstream os;
  const std::size_t d = table.dimension();
  for (std::size_t i = 0; i < d; ++i) os << 'z' << i + 1 << ',';
  for (std::size_t i = 0; i < d; ++i) os << 'x' << i + 1 << ',';
  os << "rate\n";
  for (const auto& [z, rates] : table.entries()) {
    for (const auto& [x, r] : rates) {
      for (Count c : z) os << c << ',';
      for (Count c : x) os << c << ',';
      os << r.str() << '\n';
    }
  }
  return os.str();
}

void write_rate_table(const std::filesystem::path& path, const RateTable& table) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::invalid_argument, path.string() + ": cannot write");
  out << format_rate_table(table);
}

}  // namespace crn
