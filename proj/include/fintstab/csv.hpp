#pragma once

#include <string>

#include "fintstab/certificate.hpp"
#include "fintstab/quantizer.hpp"
#include "fintstab/trajectory.hpp"

namespace fintstab {

/// Shortest round-trippable decimal form; deterministic across runs.
std::string format_double(double x);

std::string levels_csv(const LevelTable& table);
std::string trajectory_csv(const Trajectory& traj);
std::string certificate_csv(const Certificate& cert);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace fintstab
