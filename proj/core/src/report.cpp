#include "lvdyn/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "lvdyn/error.hpp"
#include "number_format.hpp"

namespace lvdyn {

using json = nlohmann::ordered_json;

void validate_config(const AnalysisConfig& cfg) {
  auto invalid = [](const std::string& msg) { fail(ErrorKind::ValidationError, "config: " + msg); };
  if (cfg.sobol.base_n < 64 || !is_power_of_two(cfg.sobol.base_n)) {
    invalid("Sobol N must be a power of two >= 64, got " + std::to_string(cfg.sobol.base_n));
  }
  if (!(cfg.sobol.fraction > 0.0 && cfg.sobol.fraction < 1.0)) {
    invalid("fraction must lie in (0, 1), got " + detail::format_g(cfg.sobol.fraction));
  }
  if (!(cfg.interaction_tol >= 0.0)) invalid("classification tolerance must be >= 0");
  if (!(cfg.stability_tol >= 0.0)) invalid("stability tolerance must be >= 0");
  if (cfg.grid_n < 2) invalid("grid size must be >= 2");
  if (!(cfg.dt > 0.0)) invalid("dt must be > 0");
  if (!(cfg.t_end >= 0.0)) invalid("t_end must be >= 0");
  if (cfg.input.empty()) invalid("no input file");
  if (cfg.mapping.x.empty() || cfg.mapping.y.empty() || cfg.mapping.year.empty()) {
    invalid("column mapping needs year, x and y columns");
  }
  if (!cfg.write_json && !cfg.write_csv) invalid("at least one report format is required");
}

const StabilityReport* Report::interior_stability() const {
  for (const auto& s : stability) {
    if (s.name == "interior") return &s.stability;
  }
  return nullptr;
}

double round_significant(double v, int digits) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, digits - 1);
  double out = 0.0;
  std::from_chars(buf, res.ptr, out);
  return out;
}

namespace {

json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_significant(v);
}

json state_json(const State& s) { return json{{"x", num(s.x)}, {"y", num(s.y)}}; }

json opt_state(const std::optional<State>& s) { return s ? state_json(*s) : json(nullptr); }

json ratio_json(const RatioEquation& eq) {
  return json{{"intercept", num(eq.intercept)},
              {"self", num(eq.self)},
              {"cross", num(eq.cross)},
              {"adj_r2", num(eq.adj_r2)},
              {"adj_r2_full", num(eq.adj_r2_full)}};
}

json discrete_json(const DiscreteEquation& eq) {
  return json{{"alpha", num(eq.alpha)}, {"self", num(eq.self)}, {"cross", num(eq.cross)}};
}

json continuous_json(const ContinuousParams& cp) {
  json j = json::object();
  const auto v = cp.to_array();
  for (std::size_t i = 0; i < v.size(); ++i) j[std::string(ContinuousParams::kNames[i])] = num(v[i]);
  return j;
}

// Rows in the three-layer table layout; beta/gamma follow the printed
// reading (beta_2 is the coefficient on x in the y equation).
json parameter_table(const RegressionCoeffs& rc, const DiscreteParams& dp,
                     const ContinuousParams& cp, const case_study::PublishedTable* printed) {
  json rows = json::array();
  auto row = [&](const char* layer, const std::string& symbol, double v, double pv) {
    json r{{"layer", layer}, {"symbol", symbol}, {"value", num(v)}};
    if (printed != nullptr) r["published"] = num(pv);
    rows.push_back(std::move(r));
  };
  const case_study::PublishedTable blank{};
  const case_study::PublishedTable& p = printed != nullptr ? *printed : blank;
  row("regression", "alpha1'", rc.x.intercept, p.primed.x.intercept);
  row("regression", "beta1'", rc.x.self, p.primed.x.self);
  row("regression", "gamma1'", rc.x.cross, p.primed.x.cross);
  row("regression", "adj_r2_1", rc.x.adj_r2, p.primed.x.adj_r2);
  row("regression", "alpha2'", rc.y.intercept, p.primed.y.intercept);
  row("regression", "beta2'", rc.y.cross, p.primed.y.cross);
  row("regression", "gamma2'", rc.y.self, p.primed.y.self);
  row("regression", "adj_r2_2", rc.y.adj_r2, p.primed.y.adj_r2);
  row("discrete", "alpha1", dp.x.alpha, p.discrete.x.alpha);
  row("discrete", "beta1", dp.x.self, p.discrete.x.self);
  row("discrete", "gamma1", dp.x.cross, p.discrete.x.cross);
  row("discrete", "alpha2", dp.y.alpha, p.discrete.y.alpha);
  row("discrete", "beta2", dp.y.cross, p.discrete.y.cross);
  row("discrete", "gamma2", dp.y.self, p.discrete.y.self);
  const auto v = cp.to_array();
  const auto pv = p.continuous.to_array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    row("continuous", std::string(ContinuousParams::kNames[i]), v[i], pv[i]);
  }
  return rows;
}

json stability_json(const EquilibriumStability& es) {
  const auto& s = es.stability;
  json eig = json::array();
  for (const auto& l : s.eigenvalues) eig.push_back(json{{"re", num(l.real())}, {"im", num(l.imag())}});
  return json{{"equilibrium", es.name},
              {"point", state_json(es.point)},
              {"jacobian", json::array({json::array({num(s.jacobian.a00), num(s.jacobian.a01)}),
                                        json::array({num(s.jacobian.a10), num(s.jacobian.a11)})})},
              {"trace", num(s.jacobian.trace())},
              {"determinant", num(s.jacobian.det())},
              {"eigenvalues", eig},
              {"classification", to_string(s.classification)},
              {"inconclusive", is_inconclusive(s.classification)}};
}

json mape_json(const FitReport& f) {
  return json{{"x", num(f.mape_x)}, {"y", num(f.mape_y)}};
}

json sobol_json(const SobolResult& r, double fraction, const std::optional<ContinuousParams>& base) {
  json outputs = json::array();
  for (const auto& est : r.outputs) {
    json idx = json::array();
    const auto fc = est.first_clipped();
    const auto tc = est.total_clipped();
    for (std::size_t i = 0; i < est.first.size(); ++i) {
      idx.push_back(json{{"parameter", r.parameters[i]},
                         {"S_i", num(est.first[i])},
                         {"S_Ti", num(est.total[i])},
                         {"S_i_clipped", num(fc[i])},
                         {"S_Ti_clipped", num(tc[i])}});
    }
    outputs.push_back(json{{"output", est.output},
                           {"variance", num(est.variance)},
                           {"sum_S_i", num(est.sum_first())},
                           {"indices", idx}});
  }
  json bounds = json::array();
  if (base) {
    const ParamBounds b = bounds_from_baseline(*base, fraction);
    for (std::size_t i = 0; i < b.intervals.size(); ++i) {
      bounds.push_back(json{{"parameter", std::string(ContinuousParams::kNames[i])},
                            {"lower", num(b.intervals[i].lower)},
                            {"upper", num(b.intervals[i].upper)}});
    }
  }
  return json{{"design", "saltelli"},
              {"base_n", r.base_n},
              {"evaluations", r.accepted_count + r.rejected_count},
              {"seed", r.seed},
              {"fraction", num(fraction)},
              {"bounds", bounds},
              {"accepted", r.accepted_count},
              {"rejected", r.rejected_count},
              {"retained_base_samples", r.retained_blocks},
              {"estimators", "first: mean(fB*(fABi-fA))/V, total: mean((fA-fABi)^2)/(2V), f centred on the retained A,B mean"},
              {"outputs", outputs}};
}

}  // namespace

std::string report_to_json(const Report& r) {
  const AnalysisConfig& c = r.config;
  json j;
  j["artifact"] = json{{"name", "lvdyn"}, {"version", r.version}};
  j["complete"] = !r.incomplete;
  if (r.incomplete) {
    j["incomplete"] = json{{"stage", r.failed_stage}, {"error", r.error}};
  }
  j["config"] = json{
      {"input", c.input.generic_string()},
      {"columns", json{{"year", c.mapping.year}, {"x", c.mapping.x}, {"y", c.mapping.y}}},
      {"mode", to_string(c.mode)},
      {"interaction_tol", num(c.interaction_tol)},
      {"stability_tol", num(c.stability_tol)},
      {"sobol", json{{"enabled", c.sobol.enabled},
                     {"base_n", c.sobol.base_n},
                     {"fraction", num(c.sobol.fraction)},
                     {"seed", c.sobol.seed}}},
      {"params_from_paper",
       c.params_from_paper ? json(std::string(case_study::to_string(*c.params_from_paper)))
                           : json(nullptr)},
      {"grid_n", c.grid_n},
      {"t_end", num(c.t_end)},
      {"dt", num(c.dt)}};
  j["provenance"] = json{{"input_sha256", r.input_sha256},
                         {"seed", c.sobol.seed},
                         {"version", r.version},
                         {"parameter_source", r.parameter_source}};
  if (r.series) {
    const TimeSeries& ts = *r.series;
    json xs = json::array(), ys = json::array();
    for (double v : ts.xs) xs.push_back(num(v));
    for (double v : ts.ys) ys.push_back(num(v));
    j["series"] = json{{"label_x", ts.label_x}, {"label_y", ts.label_y}, {"unit", ts.unit},
                       {"years", ts.years},     {"x", xs},               {"y", ys}};
  }
  if (r.primed && r.discrete && r.continuous) {
    std::optional<case_study::PublishedTable> printed;
    if (c.params_from_paper) printed = case_study::published_table(*c.params_from_paper);
    j["parameters"] = json{
        {"regression", json{{"x_equation", ratio_json(r.primed->x)},
                            {"y_equation", ratio_json(r.primed->y)}}},
        {"discrete", json{{"x_equation", discrete_json(r.discrete->x)},
                          {"y_equation", discrete_json(r.discrete->y)}}},
        {"continuous", continuous_json(*r.continuous)},
        {"table", parameter_table(*r.primed, *r.discrete, *r.continuous,
                                  printed ? &*printed : nullptr)}};
    json warnings = json::array();
    for (const auto& w : r.diagnostics.warnings) warnings.push_back(w);
    j["fit_diagnostics"] = json{{"condition_number", num(r.diagnostics.condition_number)},
                                {"warnings", warnings}};
  }
  if (r.interaction) {
    std::string prey_label = "none";
    if (r.series && r.interaction->prey == Species::X) prey_label = r.series->label_x;
    if (r.series && r.interaction->prey == Species::Y) prey_label = r.series->label_y;
    j["interaction"] = json{{"type", to_string(r.interaction->kind)},
                            {"prey", to_string(r.interaction->prey)},
                            {"prey_label", prey_label},
                            {"tolerance", num(c.interaction_tol)}};
  }
  if (r.equilibria) {
    j["equilibria"] = json{{"origin", state_json(r.equilibria->origin)},
                           {"axial_x", opt_state(r.equilibria->axial_x)},
                           {"axial_y", opt_state(r.equilibria->axial_y)},
                           {"interior", opt_state(r.equilibria->interior)}};
  }
  if (!r.stability.empty()) {
    json arr = json::array();
    for (const auto& s : r.stability) arr.push_back(stability_json(s));
    j["stability"] = arr;
  }
  if (r.phase) {
    const PhaseSummary& p = *r.phase;
    auto line = [](const Line& l) { return json{{"A", num(l.a)}, {"B", num(l.b)}, {"C", num(l.c)}}; };
    j["phase"] = json{{"nullcline_x", line(p.nullcline_x)},
                      {"nullcline_y", line(p.nullcline_y)},
                      {"bbox", json{{"x_min", num(p.bbox.x_min)},
                                    {"x_max", num(p.bbox.x_max)},
                                    {"y_min", num(p.bbox.y_min)},
                                    {"y_max", num(p.bbox.y_max)}}},
                      {"grid_n", p.grid_n},
                      {"region_counts", json{{"I", p.region_counts[0]},
                                             {"II", p.region_counts[1]},
                                             {"III", p.region_counts[2]},
                                             {"IV", p.region_counts[3]},
                                             {"boundary", p.boundary_cells}}}};
  }
  if (r.fit_one_step || r.fit_free_running) {
    json m;
    m["reported_mode"] = to_string(c.mode);
    m["window"] = "observations 2..n (the first fitted value is the first observation)";
    if (r.fit_one_step) m["one_step"] = mape_json(*r.fit_one_step);
    if (r.fit_free_running) m["free_running"] = mape_json(*r.fit_free_running);
    const FitReport* reported = c.mode == FitMode::OneStepAhead ? (r.fit_one_step ? &*r.fit_one_step : nullptr)
                                                                : (r.fit_free_running ? &*r.fit_free_running : nullptr);
    if (reported != nullptr) {
      json fx = json::array(), fy = json::array();
      for (double v : reported->fitted.xs) fx.push_back(num(v));
      for (double v : reported->fitted.ys) fy.push_back(num(v));
      m["fitted"] = json{{"x", fx}, {"y", fy}};
    }
    j["mape"] = m;
  }
  if (r.sobol) j["sobol"] = sobol_json(*r.sobol, c.sobol.fraction, r.continuous);
  json files = json::array();
  for (const auto& f : r.written_files) files.push_back(f);
  j["files"] = files;
  return j.dump(2) + "\n";
}

std::string sobol_to_csv(const SobolResult& result) {
  std::ostringstream out;
  out << "parameter,output,S_i,S_Ti,S_i_clipped,S_Ti_clipped\n";
  for (const auto& est : result.outputs) {
    const auto fc = est.first_clipped();
    const auto tc = est.total_clipped();
    for (std::size_t i = 0; i < est.first.size(); ++i) {
      out << result.parameters[i] << ',' << est.output << ',' << detail::format_g(est.first[i])
          << ',' << detail::format_g(est.total[i]) << ',' << detail::format_g(fc[i]) << ','
          << detail::format_g(tc[i]) << '\n';
    }
  }
  return out.str();
}

std::string params_to_csv(const Report& report) {
  std::ostringstream out;
  const auto& source = report.config.params_from_paper;
  out << (source ? "layer,symbol,value,published\n" : "layer,symbol,value\n");
  if (!(report.primed && report.discrete && report.continuous)) return out.str();
  std::optional<case_study::PublishedTable> printed;
  if (source) printed = case_study::published_table(*source);
  const json rows = parameter_table(*report.primed, *report.discrete, *report.continuous,
                                    printed ? &*printed : nullptr);
  auto cell = [](const json& v) {
    return v.is_null() ? std::string("nan") : detail::format_g(v.get<double>());
  };
  for (const auto& row : rows) {
    out << row["layer"].get<std::string>() << ',' << row["symbol"].get<std::string>() << ','
        << cell(row["value"]);
    if (printed) out << ',' << cell(row["published"]);
    out << '\n';
  }
  return out.str();
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) fail(ErrorKind::IoError, "write failed for " + path.string());
}

}  // namespace

std::vector<std::filesystem::path> write_report_files(const Report& report) {
  const auto& dir = report.config.out_dir;
  std::vector<std::filesystem::path> written;
  if (dir.empty()) return written;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    fail(ErrorKind::IoError, "cannot create output directory " + dir.string());
  }
  if (report.config.write_json) {
    write_text(dir / "report.json", report_to_json(report));
    written.push_back(dir / "report.json");
  }
  if (report.config.write_csv) {
    write_text(dir / "params.csv", params_to_csv(report));
    written.push_back(dir / "params.csv");
    if (report.sobol) {
      write_text(dir / "sobol.csv", sobol_to_csv(*report.sobol));
      written.push_back(dir / "sobol.csv");
    }
    if (report.series && (report.fit_one_step || report.fit_free_running)) {
      const FitReport& f = report.config.mode == FitMode::FreeRunning && report.fit_free_running
                               ? *report.fit_free_running
                               : *report.fit_one_step;
      std::ostringstream out;
      out << "year,x,x_fit,y,y_fit\n";
      const TimeSeries& ts = *report.series;
      for (std::size_t i = 0; i < ts.size(); ++i) {
        out << ts.years[i] << ',' << detail::format_g(ts.xs[i]) << ','
            << detail::format_g(f.fitted.xs[i]) << ',' << detail::format_g(ts.ys[i]) << ','
            << detail::format_g(f.fitted.ys[i]) << '\n';
      }
      write_text(dir / "fitted.csv", out.str());
      written.push_back(dir / "fitted.csv");
    }
  }
  return written;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    fail(ErrorKind::IoError, "sha256 initialisation failed");
  }
  char buf[1 << 14];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

}  // namespace lvdyn
