#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ipsnet/simulator.hpp"

namespace ipsnet {

// Trajectory CSV: header `t,S` (or `t,S,N`), t starting at 1.
void write_trajectory(std::ostream& out, const ObservationSeries& series);
void write_trajectory(const std::filesystem::path& path,
                      const ObservationSeries& series);
ObservationSeries read_trajectory(const std::filesystem::path& path);

// Single-column sample CSV with header `value`.
std::vector<double> read_sample(const std::filesystem::path& path);

std::string format_double(double v);  // 12 significant digits

}  // namespace ipsnet
