#include "crn/network_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace crn {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

class LineParser {
 public:
  LineParser(std::string_view origin, std::size_t line) : origin_(origin), line_(line) {}

  [[noreturn]] void error(const std::string& message) const {
    fail(ErrorCode::parse_error,
         std::string(origin_) + ":" + std::to_string(line_) + ": " + message);
  }

  ComplexVector complex(std::string_view text, const std::map<std::string, std::size_t, std::less<>>& index,
                        std::size_t d) const {
    text = trim(text);
    std::vector<Count> coeffs(d, 0);
    if (text == "0") return ComplexVector(coeffs);
    if (text.empty()) error("empty complex (use 0 for the empty complex)");
    for (auto term : split(text, '+')) {
      term = trim(term);
      Count coefficient = 1;
      std::string_view name = term;
      if (auto star = term.find('*'); star != std::string_view::npos) {
        auto number = trim(term.substr(0, star));
        name = trim(term.substr(star + 1));
        auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), coefficient);
        if (ec != std::errc() || ptr != number.data() + number.size() || coefficient <= 0) {
          error("bad stoichiometric coefficient '" + std::string(number) + "'");
        }
      }
      if (!is_identifier(name)) error("malformed term '" + std::string(term) + "'");
      auto it = index.find(name);
      if (it == index.end()) error("unknown species '" + std::string(name) + "'");
      coeffs[it->second] += coefficient;
    }
    return ComplexVector(coeffs);
  }

 private:
  std::string_view origin_;
  std::size_t line_;
};

}  // namespace

ReactionSystem parse_network(std::string_view text, std::string_view origin) {
  std::optional<ReactionSystem> sys;
  std::map<std::string, std::size_t, std::less<>> index;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    LineParser p(origin, line_no);

    if (!sys) {
      constexpr std::string_view key = "species:";
      if (line.substr(0, key.size()) != key) p.error("expected 'species:' header");
      std::vector<std::string> names;
      std::istringstream words{std::string(line.substr(key.size()))};
      std::string name;
      while (words >> name) {
        if (!is_identifier(name)) p.error("invalid species name '" + name + "'");
        if (index.count(name)) p.error("duplicate species '" + name + "'");
        index.emplace(name, names.size());
        names.push_back(name);
      }
      if (names.empty()) p.error("no species declared");
      sys.emplace(std::move(names));
      continue;
    }

    auto arrow = line.find("->");
    auto at = line.rfind('@');
    if (arrow == std::string_view::npos || at == std::string_view::npos || at < arrow) {
      p.error("expected '<complex> -> <complex> @ <rate>'");
    }
    ComplexVector source = p.complex(line.substr(0, arrow), index, sys->dimension());
    ComplexVector target = p.complex(line.substr(arrow + 2, at - arrow - 2), index, sys->dimension());
    Rate rate;
    try {
      rate = parse_rate(line.substr(at + 1));
    } catch (const Error& e) {
      p.error(e.what());
    }
    if (rate.sign() <= 0) p.error("rate must be positive, got " + rate.str());
    if (source == target) p.error("source equals target");
    if (sys->find(source, target) != nullptr) p.error("duplicate reaction");
    sys->add(Reaction(std::move(source), std::move(target), std::move(rate)));
  }
  if (!sys) fail(ErrorCode::parse_error, std::string(origin) + ": missing 'species:' header");
  return std::move(*sys);
}

ReactionSystem read_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::parse_error, path.string() + ": cannot open");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_network(buffer.str(), path.string());
}

std::string format_complex(const ComplexVector& y, const std::vector<std::string>& species) {
  std::string out;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (y[i] != 1) out += std::to_string(y[i]) + "*";
    out += species[i];
  }
  return out.empty() ? "0" : out;
}

std::string format_network(const ReactionSystem& sys) {
  std::ostringstream os;
  os << "species:";
  for (const auto& s : sys.species()) os << ' ' << s;
  os << '\n';
  for (const auto& r : sys.reactions()) {
    os << format_complex(r.source(), sys.species()) << " -> "
       << format_complex(r.target(), sys.species()) << " @ " << r.rate_constant().str() << '\n';
  }
  return os.str();
}

void write_network(const std::filesystem::path& path, const ReactionSystem& sys) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::invalid_argument, path.string() + ": cannot write");
  out << format_network(sys);
}

std::vector<Count> parse_count_list(std::string_view text) {
  std::vector<Count> out;
  for (auto part : split(trim(text), ',')) {
    part = trim(part);
    Count value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      fail(ErrorCode::parse_error, "malformed integer list '" + std::string(text) + "'");
    }
    out.push_back(value);
  }
  return out;
}

}  // namespace crn
