#pragma once

#include "crn/simulate.hpp"

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace crn {

// Trajectory CSV (.traj.csv): header `traj,t,x1,...,xd`, one row per record,
// rows grouped by trajectory and time-sorted; each group starts at t = 0.
// Times are written with 17 significant digits so they round-trip exactly.

void write_trajectories(std::ostream& out, std::span<const Trajectory> trajs);
void write_trajectories(const std::filesystem::path& path, std::span<const Trajectory> trajs);

/// Horizon of a loaded trajectory is its last record time; the absorbed
/// flag is not part of the format.
std::vector<Trajectory> parse_trajectories(std::string_view text,
                                           std::string_view origin = "<input>");
std::vector<Trajectory> read_trajectories(const std::filesystem::path& path);

std::string format_time(double t);

}  // namespace crn
