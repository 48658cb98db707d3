#pragma once

// Published estimates for the China AI-capital case study (2016-2023),
// used for injection (--params-from-paper) and for reproduction checks.

#include <array>
#include <optional>
#include <string_view>

#include "lvdyn/params.hpp"
#include "lvdyn/series.hpp"

namespace lvdyn::case_study {

enum class Subsystem { AiPhysical, AiLabor };

std::string_view to_string(Subsystem s) noexcept;
std::optional<Subsystem> parse_subsystem(std::string_view s) noexcept;

/// Printed three-layer parameter table for one subsystem.
struct PublishedTable {
  RegressionCoeffs primed;   // role-mapped ratio-regression coefficients and adj R^2
  DiscreteParams discrete;   // role-mapped discrete-map parameters
  ContinuousParams continuous;
};

PublishedTable published_table(Subsystem s);

struct PublishedDynamics {
  State equilibrium;
  std::array<double, 2> eigenvalues;  // descending
};

PublishedDynamics published_dynamics(Subsystem s);

/// One-step-free MAPE table values (percent) for (x, y).
std::array<double, 2> published_mape(Subsystem s);

struct PublishedSobol {
  std::array<double, 6> first;
  std::array<double, 6> total;
  double sum_first;
};

/// output 0 = x*, 1 = y*
PublishedSobol published_sobol(Subsystem s, int output);

/// Bundled observations for the subsystem.
TimeSeries bundled_series(Subsystem s);

/// Column name of the y factor in the bundled fixture files.
std::string_view fixture_y_column(Subsystem s) noexcept;
std::string_view fixture_file(Subsystem s) noexcept;

}  // namespace lvdyn::case_study
