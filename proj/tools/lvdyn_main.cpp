// lvdyn: fit, analyze and report two-species Lotka-Volterra dynamics from
// paired annual series.
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure, 4 I/O error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "lvdyn/case_study.hpp"
#include "lvdyn/error.hpp"
#include "lvdyn/pipeline.hpp"
#include "summary.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct Options {
  std::string input;
  std::string year_col = "year";
  std::string x_col = "ai_capital";
  std::string y_col;
  std::string label_x;
  std::string label_y;
  std::string unit = "billion yuan";
  std::string mode = "one-step";
  std::size_t sobol_n = 1024;
  double fraction = 0.1;
  std::optional<std::uint64_t> seed;
  std::string params_from_paper;  // "" = not set, "auto" = bare flag
  std::string out;
  std::vector<std::string> formats{"json"};
  double tol = 0.0;
  std::size_t grid_n = 41;
  double t_end = 10.0;
  double dt = lvdyn::kDefaultDt;
  unsigned workers = 1;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--input", o.input, "Headered CSV with the paired series");
  cmd->add_option("--year-col", o.year_col, "Year column name")->capture_default_str();
  cmd->add_option("--x-col", o.x_col, "Column of the x factor")->capture_default_str();
  cmd->add_option("--y-col", o.y_col, "Column of the y factor");
  cmd->add_option("--label-x", o.label_x, "Display name of x");
  cmd->add_option("--label-y", o.label_y, "Display name of y");
  cmd->add_option("--unit", o.unit, "Unit label carried into reports")->capture_default_str();
  cmd->add_option("--mode", o.mode, "Fitted trajectory for MAPE: one-step | free-running")
      ->capture_default_str();
  cmd->add_option("--sobol-n", o.sobol_n, "Saltelli base sample size (power of two >= 64)")
      ->capture_default_str();
  cmd->add_option("--fraction", o.fraction, "Half-width of the Sobol box relative to the baseline")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "Sobol sequence seed (falls back to LVDYN_SEED)");
  cmd->add_option("--params-from-paper", o.params_from_paper,
                  "Skip fitting and inject published parameters (ai-physical | ai-labor)")
      ->expected(0, 1)
      ->default_str("auto");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--format", o.formats, "Report formats: json, csv")
      ->delimiter(',')
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--tol", o.tol, "Coefficients with |b| <= tol count as zero when classifying")
      ->capture_default_str();
  cmd->add_option("--grid-n", o.grid_n, "Phase-plane grid size")->capture_default_str();
  cmd->add_option("--t-end", o.t_end, "Integration horizon for phase trajectories")
      ->capture_default_str();
  cmd->add_option("--dt", o.dt, "RK4 step")->capture_default_str();
  cmd->add_option("--workers", o.workers, "Threads for grid and Sobol evaluation")
      ->capture_default_str();
}

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("LVDYN_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    lvdyn::fail(lvdyn::ErrorKind::ValidationError, std::string("LVDYN_SEED is not an integer: ") + env);
  }
  return lvdyn::kDefaultSeed;
}

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("LVDYN_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return LVDYN_DATA_DIR;
}

lvdyn::AnalysisConfig make_config(const Options& o) {
  using namespace lvdyn;
  AnalysisConfig cfg;
  if (!o.params_from_paper.empty()) {
    if (o.params_from_paper == "auto" || o.params_from_paper == "true") {
      for (auto s : {case_study::Subsystem::AiPhysical, case_study::Subsystem::AiLabor}) {
        if (o.y_col == case_study::fixture_y_column(s)) cfg.params_from_paper = s;
      }
      if (!cfg.params_from_paper) {
        fail(ErrorKind::ValidationError,
             "--params-from-paper needs a subsystem (ai-physical | ai-labor) unless --y-col is "
             "physical_capital or labor");
      }
    } else {
      cfg.params_from_paper = case_study::parse_subsystem(o.params_from_paper);
      if (!cfg.params_from_paper) {
        fail(ErrorKind::ValidationError, "unknown subsystem '" + o.params_from_paper + "'");
      }
    }
  }
  cfg.mapping = {o.year_col, o.x_col, o.y_col};
  if (cfg.mapping.y.empty() && cfg.params_from_paper) {
    cfg.mapping.y = std::string(case_study::fixture_y_column(*cfg.params_from_paper));
  }
  cfg.input = o.input;
  if (cfg.input.empty()) {
    std::optional<case_study::Subsystem> fixture = cfg.params_from_paper;
    for (auto s : {case_study::Subsystem::AiPhysical, case_study::Subsystem::AiLabor}) {
      if (!fixture && cfg.mapping.y == case_study::fixture_y_column(s)) fixture = s;
    }
    if (fixture) cfg.input = data_dir() / std::string(case_study::fixture_file(*fixture));
  }
  cfg.labels = {o.label_x, o.label_y, o.unit};
  cfg.mode = parse_fit_mode(o.mode);
  cfg.interaction_tol = o.tol;
  cfg.sobol.base_n = o.sobol_n;
  cfg.sobol.fraction = o.fraction;
  cfg.sobol.seed = resolve_seed(o);
  cfg.out_dir = o.out;
  cfg.write_json = std::find(o.formats.begin(), o.formats.end(), "json") != o.formats.end();
  cfg.write_csv = std::find(o.formats.begin(), o.formats.end(), "csv") != o.formats.end();
  cfg.grid_n = o.grid_n;
  cfg.t_end = o.t_end;
  cfg.dt = o.dt;
  cfg.workers = o.workers;
  return cfg;
}

int exit_code_for(const lvdyn::Error& e) {
  switch (e.category()) {
    case lvdyn::ErrorCategory::Validation: return kExitValidation;
    case lvdyn::ErrorCategory::Numerical: return kExitNumerical;
    case lvdyn::ErrorCategory::Io: return kExitIo;
  }
  return 1;
}

void print_summary(const lvdyn::Report& report) {
  const auto doc = nlohmann::ordered_json::parse(lvdyn::report_to_json(report));
  std::cout << lvdyn::cli::render_summary(doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lvdyn: Lotka-Volterra fitting, stability and Sobol sensitivity for paired series"};
  app.require_subcommand(1);
  Options o;

  auto* fit = app.add_subcommand("fit", "Fit the ratio regressions and report the three parameter layers");
  auto* analyze = app.add_subcommand("analyze", "Run the full pipeline and write report.json");
  auto* phase = app.add_subcommand("phase", "Export nullclines, sign grid, vector field and trajectories");
  auto* sobol = app.add_subcommand("sobol", "Sobol sensitivity of the interior equilibrium");
  auto* report_cmd = app.add_subcommand("report", "Print a summary of an existing report.json");
  for (auto* cmd : {fit, analyze, phase, sobol}) add_common(cmd, o);
  std::string report_path;
  report_cmd->add_option("--input", report_path, "report.json to summarize")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    if (report_cmd->parsed()) {
      std::ifstream in(report_path, std::ios::binary);
      if (!in) lvdyn::fail(lvdyn::ErrorKind::IoError, "cannot open " + report_path);
      nlohmann::ordered_json doc;
      try {
        doc = nlohmann::ordered_json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        lvdyn::fail(lvdyn::ErrorKind::ParseError, report_path + ": " + e.what());
      }
      std::cout << lvdyn::cli::render_summary(doc);
      return 0;
    }

    lvdyn::AnalysisConfig cfg = make_config(o);
    if (fit->parsed()) {
      cfg.sobol.enabled = false;
      cfg.export_phase = false;
    } else if (phase->parsed()) {
      cfg.sobol.enabled = false;
      if (cfg.out_dir.empty()) lvdyn::fail(lvdyn::ErrorKind::ValidationError, "phase needs --out");
    } else if (sobol->parsed()) {
      cfg.export_phase = false;
    }

    const lvdyn::Report report = lvdyn::run_pipeline(cfg);
    CLI::App* used = fit->parsed() ? fit : phase->parsed() ? phase : sobol->parsed() ? sobol : analyze;
    const bool explicit_format = used->count("--format") > 0;
    const bool to_stdout = cfg.out_dir.empty();
    if (to_stdout && explicit_format && !cfg.write_json) {
      std::cout << (sobol->parsed() && report.sobol ? lvdyn::sobol_to_csv(*report.sobol)
                                                    : lvdyn::params_to_csv(report));
    } else if (to_stdout && (analyze->parsed() || explicit_format)) {
      std::cout << lvdyn::report_to_json(report);
    } else if (to_stdout && sobol->parsed() && report.sobol) {
      std::cout << lvdyn::sobol_to_csv(*report.sobol);
    } else {
      print_summary(report);
      if (!cfg.out_dir.empty()) std::cout << "\nwritten to " << cfg.out_dir.string() << "\n";
    }
    return 0;
  } catch (const lvdyn::Error& e) {
    std::cerr << "lvdyn: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "lvdyn: " << e.what() << "\n";
    return 1;
  }
}
