#include "crn/trajectory_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace crn {

std::string format_time(double t) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), t, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, end);
}

void write_trajectories(std::ostream& out, std::span<const Trajectory> trajs) {
  const std::size_t d = trajs.empty() ? 0 : trajs.front().dimension();
  out << "traj,t";
  for (std::size_t i = 0; i < d; ++i) out << ",x" << (i + 1);
  out << '\n';
  std::string line;
  for (const auto& tr : trajs) {
    for (std::size_t k = 0; k < tr.record_count(); ++k) {
      line = std::to_string(tr.id());
      line += ',';
      line += format_time(tr.time(k));
      for (Count c : tr.state(k)) {
        line += ',';
        line += std::to_string(c);
      }
      line += '\n';
      out << line;
    }
  }
}

void write_trajectories(const std::filesystem::path& path, std::span<const Trajectory> trajs) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::invalid_argument, path.string() + ": cannot write");
  write_trajectories(out, trajs);
}

namespace {

template <typename T>
bool parse_number(std::string_view s, T& value) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

}  // namespace

std::vector<Trajectory> parse_trajectories(std::string_view text, std::string_view origin) {
  std::vector<Trajectory> out;
  std::map<std::size_t, std::size_t> seen;
  std::size_t d = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto error = [&](const std::string& msg) {
    fail(ErrorCode::parse_error, std::string(origin) + ":" + std::to_string(line_no) + ": " + msg);
  };
  std::vector<std::string_view> fields;
  std::vector<Count> x;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    fields.clear();
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }

    if (line_no == 1) {
      if (fields.size() < 3 || fields[0] != "traj" || fields[1] != "t") {
        error("expected header 'traj,t,x1,...,xd'");
      }
      d = fields.size() - 2;
      continue;
    }
    if (fields.size() != d + 2) error("expected " + std::to_string(d + 2) + " fields");
    std::size_t id = 0;
    double t = 0;
    if (!parse_number(fields[0], id)) error("bad trajectory id");
    if (!parse_number(fields[1], t)) error("bad time");
    x.assign(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
      if (!parse_number(fields[i + 2], x[i]) || x[i] < 0) error("bad count");
    }
    bool starts_group = out.empty() || out.back().id() != id;
    if (starts_group) {
      if (seen.count(id)) error("rows of trajectory " + std::to_string(id) + " are not grouped");
      if (t != 0.0) error("trajectory " + std::to_string(id) + " must start at t=0");
      seen.emplace(id, out.size());
      out.emplace_back(id, StateVector(x), 0.0);
    } else {
      try {
        out.back().append(t, x);
      } catch (const Error& e) {
        error(e.what());
      }
      out.back().set_horizon(t);
    }
  }
  if (line_no == 0) fail(ErrorCode::parse_error, std::string(origin) + ": empty trajectory file");
  return out;
}

std::vector<Trajectory> read_trajectories(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::parse_error, path.string() + ": cannot open");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_trajectories(buffer.str(), path.string());
}

}  // namespace crn
