#pragma once

#include <string>
#include <vector>

#include "fintstab/trajectory.hpp"

namespace fintstab {

/// Columns addressable by emit_plot: e1..en, norm_inf, norm_2, alpha3, alpha4.
std::vector<double> trajectory_column(const Trajectory& traj, const std::string& column);

/// Deterministic SVG line plot of the named columns against time;
/// byte-identical output for identical input.
std::string render_plot_svg(const Trajectory& traj, const std::vector<std::string>& columns,
                            const std::string& title);

void emit_plot(const Trajectory& traj, const std::vector<std::string>& columns,
               const std::string& path);

}  // namespace fintstab
