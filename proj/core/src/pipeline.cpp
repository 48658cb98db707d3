#include "lvdyn/pipeline.hpp"

#include <functional>

#include "lvdyn/phase_export.hpp"

#ifndef LVDYN_VERSION
#define LVDYN_VERSION "0.0.0"
#endif

namespace lvdyn {

namespace {

PhaseSummary summarize(const PhaseGeometry& pg) {
  PhaseSummary s;
  s.nullcline_x = pg.nullcline_x;
  s.nullcline_y = pg.nullcline_y;
  s.bbox = pg.bbox;
  s.grid_n = pg.grid_n;
  for (const GridSample& g : pg.grid) {
    if (g.sign_x < 0 && g.sign_y > 0) ++s.region_counts[0];
    else if (g.sign_x < 0 && g.sign_y < 0) ++s.region_counts[1];
    else if (g.sign_x > 0 && g.sign_y < 0) ++s.region_counts[2];
    else if (g.sign_x > 0 && g.sign_y > 0) ++s.region_counts[3];
    else ++s.boundary_cells;
  }
  return s;
}

std::vector<NamedTrajectory> phase_trajectories(const AnalysisConfig& cfg, const ContinuousParams& cp,
                                                const TimeSeries& ts, const BBox& box) {
  std::vector<NamedTrajectory> out;
  const auto stride = static_cast<std::size_t>(std::max(1.0, 0.01 / cfg.dt));
  out.push_back({"empirical", integrate_ode(cp, {ts.xs.front(), ts.ys.front()}, cfg.t_end, cfg.dt),
                 stride});
  const double xm = 0.5 * (box.x_min + box.x_max);
  const double ym = 0.5 * (box.y_min + box.y_max);
  const std::pair<const char*, State> starts[] = {
      {"low_x_high_y", {0.125 * xm, 1.75 * ym}},
      {"high_x_low_y", {1.75 * xm, 0.125 * ym}},
      {"high_x_high_y", {1.75 * xm, 1.75 * ym}},
  };
  for (const auto& [name, s] : starts) {
    out.push_back({name, integrate_ode(cp, s, cfg.t_end, cfg.dt), stride});
  }
  return out;
}

}  // namespace

Report run_pipeline(const AnalysisConfig& cfg) {
  Report report;
  report.config = cfg;
  report.version = LVDYN_VERSION;
  std::string stage = "config";

  auto run_stage = [&](const char* name, const std::function<void()>& body) {
    stage = name;
    body();
  };

  try {
    run_stage("config", [&] { validate_config(cfg); });

    run_stage("load", [&] {
      report.series = load_series(cfg.input, cfg.mapping, cfg.labels);
      report.input_sha256 = sha256_file(cfg.input);
    });
    const TimeSeries& ts = *report.series;

    run_stage("fit", [&] {
      if (cfg.params_from_paper) {
        const auto table = case_study::published_table(*cfg.params_from_paper);
        report.parameter_source =
            "published:" + std::string(case_study::to_string(*cfg.params_from_paper));
        report.continuous = table.continuous;
        report.discrete = continuous_to_discrete(table.continuous);
        RegressionCoeffs rc = discrete_to_regression(*report.discrete);
        rc.x.adj_r2 = table.primed.x.adj_r2;
        rc.y.adj_r2 = table.primed.y.adj_r2;
        rc.x.adj_r2_full = rc.y.adj_r2_full = std::numeric_limits<double>::quiet_NaN();
        report.primed = rc;
      } else {
        report.parameter_source = "fit";
        report.primed = fit_zero_intercept(ts, &report.diagnostics);
      }
    });

    run_stage("transform", [&] {
      if (!cfg.params_from_paper) {
        report.discrete = regression_to_discrete(*report.primed);
        report.continuous = discrete_to_continuous(*report.discrete);
      }
    });
    const ContinuousParams& cp = *report.continuous;

    run_stage("classify", [&] { report.interaction = classify_interaction(cp, cfg.interaction_tol); });

    run_stage("equilibria", [&] { report.equilibria = equilibria(cp); });

    run_stage("stability", [&] {
      const EquilibriumSet& set = *report.equilibria;
      auto add = [&](const char* name, const State& p) {
        report.stability.push_back({name, p, analyze_stability(cp, p, cfg.stability_tol)});
      };
      add("origin", set.origin);
      if (set.axial_x) add("axial_x", *set.axial_x);
      if (set.axial_y) add("axial_y", *set.axial_y);
      if (set.interior) add("interior", *set.interior);
    });

    run_stage("phase", [&] {
      const BBox box = default_bbox(cp);
      const PhaseGeometry pg = phase_geometry(cp, box, cfg.grid_n, cfg.workers);
      report.phase = summarize(pg);
      if (cfg.export_phase && !cfg.out_dir.empty()) {
        const auto trajectories = phase_trajectories(cfg, cp, ts, box);
        for (const auto& p : export_phase_data(pg, trajectories, cfg.out_dir / "phase")) {
          report.written_files.push_back("phase/" + p.filename().generic_string());
        }
      }
    });

    run_stage("mape", [&] {
      const DiscreteParams& dp = *report.discrete;
      for (FitMode mode : {FitMode::OneStepAhead, FitMode::FreeRunning}) {
        std::optional<FitReport>& slot =
            mode == FitMode::OneStepAhead ? report.fit_one_step : report.fit_free_running;
        if (mode == cfg.mode) {
          slot = evaluate_fit(*report.primed, dp, ts, mode);
          continue;
        }
        try {
          slot = evaluate_fit(*report.primed, dp, ts, mode);
        } catch (const Error& e) {
          report.diagnostics.warnings.push_back(std::string(to_string(mode)) +
                                                " MAPE unavailable: " + e.what());
        }
      }
    });

    if (cfg.sobol.enabled) {
      run_stage("sobol", [&] {
        const ParamBounds bounds = bounds_from_baseline(cp, cfg.sobol.fraction);
        report.sobol = equilibrium_sensitivity(bounds, cfg.sobol.base_n, cfg.sobol.seed, cfg.workers);
      });
    }

    run_stage("export", [&] {
      if (cfg.write_csv && !cfg.out_dir.empty()) {
        for (const char* f : {"params.csv", "sobol.csv", "fitted.csv"}) {
          if (std::string(f) == "sobol.csv" && !report.sobol) continue;
          report.written_files.push_back(f);
        }
      }
      write_report_files(report);
    });
  } catch (const Error& e) {
    report.incomplete = true;
    report.failed_stage = stage;
    report.error = e.what();
    if (stage != "config" && stage != "export" && !cfg.out_dir.empty()) {
      try {
        write_report_files(report);
      } catch (const Error&) {
        // the original failure is the one worth reporting
      }
    }
    throw StageError(stage, e);
  }
  return report;
}

}  // namespace lvdyn
