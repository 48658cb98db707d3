#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lvdyn/dynamics.hpp"

namespace lvdyn {

struct NamedTrajectory {
  std::string name;
  TimedTrajectory trajectory;
  std::size_t stride = 1;  // write every stride-th sample (the last one always)
};

/// Writes nullclines.csv, signgrid.csv, vectorfield.csv, trajectory_<name>.csv
/// and a README.txt describing the columns. Returns the written paths.
std::vector<std::filesystem::path> export_phase_data(const PhaseGeometry& pg,
                                                     const std::vector<NamedTrajectory>& trajectories,
                                                     const std::filesystem::path& dir);

}  // namespace lvdyn
