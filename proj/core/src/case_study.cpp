#include "lvdyn/case_study.hpp"

namespace lvdyn::case_study {

std::string_view to_string(Subsystem s) noexcept {
  return s == Subsystem::AiPhysical ? "ai-physical" : "ai-labor";
}

std::optional<Subsystem> parse_subsystem(std::string_view s) noexcept {
  if (s == "ai-physical" || s == "physical") return Subsystem::AiPhysical;
  if (s == "ai-labor" || s == "labor") return Subsystem::AiLabor;
  return std::nullopt;
}

// Printed table, read by role: in the y equation the coefficient on x is the
// cross term and the coefficient on y the self term.
PublishedTable published_table(Subsystem s) {
  PublishedTable t;
  if (s == Subsystem::AiPhysical) {
    t.primed.x = {0.021224, 0.001769, 0.000012, 0.9908, 0.0};
    t.primed.y = {0.007191, 0.000025, -0.001578, 0.9995, 0.0};
    t.discrete.x = {47.1160, -0.08337, -0.000578};
    t.discrete.y = {139.0605, -0.003539, 0.219529};
    t.continuous = {3.852613, -0.006965, -0.000048, 4.934909, 0.007846, -0.000126};
  } else {
    t.primed.x = {0.023710, 0.000246, 0.000021, 0.9909, 0.0};
    t.primed.y = {0.011324, 0.000041, -0.004431, 0.9989, 0.0};
    t.discrete.x = {42.1757, -0.010375, -0.000888};
    t.discrete.y = {88.3049, -0.003656, 0.391303};
    t.continuous = {3.741844, -0.000943, -0.000081, 4.480796, 0.020083, -0.000187};
  }
  return t;
}

PublishedDynamics published_dynamics(Subsystem s) {
  if (s == Subsystem::AiPhysical) return {{198.18, 51506.42}, {-2.29, -5.57}};
  return {{186.78, 44021.09}, {-2.52, -5.89}};
}

std::array<double, 2> published_mape(Subsystem s) {
  return s == Subsystem::AiPhysical ? std::array<double, 2>{6.15, 1.25}
                                    : std::array<double, 2>{6.33, 1.75};
}

PublishedSobol published_sobol(Subsystem s, int output) {
  if (s == Subsystem::AiPhysical) {
    if (output == 0) {
      return {{0.328, 0.079, 0.245, 0.080, 0.008, 0.250},
              {0.334, 0.085, 0.249, 0.083, 0.008, 0.254},
              0.990};
    }
    return {{0.134, 0.031, 0.103, 0.174, 0.016, 0.534},
            {0.137, 0.033, 0.106, 0.175, 0.018, 0.542},
            0.992};
  }
  if (output == 0) {
    return {{0.208, 0.002, 0.347, 0.056, 0.045, 0.333},
            {0.216, 0.001, 0.354, 0.056, 0.045, 0.344},
            0.989};
  }
  return {{0.368, 0.002, 0.614, 0.001, 0.000, 0.007},
          {0.375, 0.002, 0.619, 0.001, 0.001, 0.008},
          0.992};
}

TimeSeries bundled_series(Subsystem s) {
  TimeSeries ts;
  ts.label_x = "AI capital";
  ts.unit = "billion yuan";
  ts.years = {2016, 2017, 2018, 2019, 2020, 2021, 2022, 2023};
  ts.xs = {15.40, 31.80, 59.30, 93.60, 138.90, 162.10, 170.60, 213.70};
  if (s == Subsystem::AiPhysical) {
    ts.label_y = "Physical capital";
    ts.ys = {37202.10, 39492.60, 41821.50, 43954.10, 45115.50, 47300.30, 49596.60, 50970.80};
  } else {
    ts.label_y = "Labor";
    ts.ys = {22770, 25500, 28210, 31820, 34880, 39700, 42390, 44650};
  }
  return ts;
}

std::string_view fixture_y_column(Subsystem s) noexcept {
  return s == Subsystem::AiPhysical ? "physical_capital" : "labor";
}

std::string_view fixture_file(Subsystem s) noexcept {
  return s == Subsystem::AiPhysical ? "cn_ai_physical.csv" : "cn_ai_labor.csv";
}

}  // namespace lvdyn::case_study
