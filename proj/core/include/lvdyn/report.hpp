#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lvdyn/case_study.hpp"
#include "lvdyn/dynamics.hpp"
#include "lvdyn/fitting.hpp"
#include "lvdyn/params.hpp"
#include "lvdyn/sensitivity.hpp"
#include "lvdyn/series_io.hpp"

namespace lvdyn {

struct SobolSettings {
  bool enabled = true;
  std::size_t base_n = 1024;
  double fraction = 0.1;
  std::uint64_t seed = 20240101;
};

inline constexpr std::uint64_t kDefaultSeed = 20240101;

struct AnalysisConfig {
  std::filesystem::path input;
  ColumnMapping mapping;
  SeriesLabels labels;
  FitMode mode = FitMode::OneStepAhead;
  double interaction_tol = 0.0;
  double stability_tol = kDefaultStabilityTol;
  SobolSettings sobol;
  std::optional<case_study::Subsystem> params_from_paper;
  std::filesystem::path out_dir;  // empty: nothing is written
  bool write_json = true;
  bool write_csv = false;
  bool export_phase = true;
  std::size_t grid_n = 41;
  double t_end = 10.0;
  double dt = kDefaultDt;
  unsigned workers = 1;
};

/// ValidationError on any violated invariant; runs before any work.
void validate_config(const AnalysisConfig& cfg);

struct EquilibriumStability {
  std::string name;  // origin, axial_x, axial_y, interior
  State point;
  StabilityReport stability;
};

struct PhaseSummary {
  Line nullcline_x;
  Line nullcline_y;
  BBox bbox;
  std::size_t grid_n = 0;
  // counts of grid cells by (sign dx/dt, sign dy/dt): I (-,+), II (-,-), III (+,-), IV (+,+)
  std::array<std::size_t, 4> region_counts{};
  std::size_t boundary_cells = 0;
};

struct Report {
  AnalysisConfig config;
  std::string version;
  std::string input_sha256;
  std::string parameter_source;  // "fit" or "published:<subsystem>"
  std::optional<TimeSeries> series;
  std::optional<RegressionCoeffs> primed;
  std::optional<DiscreteParams> discrete;
  std::optional<ContinuousParams> continuous;
  FitDiagnostics diagnostics;
  std::optional<InteractionType> interaction;
  std::optional<EquilibriumSet> equilibria;
  std::vector<EquilibriumStability> stability;
  std::optional<PhaseSummary> phase;
  std::optional<FitReport> fit_one_step;
  std::optional<FitReport> fit_free_running;
  std::optional<SobolResult> sobol;
  std::vector<std::string> written_files;
  bool incomplete = false;
  std::string failed_stage;
  std::string error;

  const StabilityReport* interior_stability() const;
};

/// Rounds to 9 significant digits (shortest text of the rounded value).
double round_significant(double v, int digits = 9);

/// Deterministic JSON: fixed key order, numbers rounded to 9 significant digits.
std::string report_to_json(const Report& report);

/// sobol.csv rows: parameter,output,S_i,S_Ti (plus clipped columns).
std::string sobol_to_csv(const SobolResult& result);
std::string params_to_csv(const Report& report);

/// Writes report.json and/or the CSV views into cfg.out_dir.
std::vector<std::filesystem::path> write_report_files(const Report& report);

std::string sha256_file(const std::filesystem::path& path);

}  // namespace lvdyn
