#include "lvdyn/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lvdyn/error.hpp"

namespace lvdyn {

void validate_series(const TimeSeries& ts) {
  const std::size_t n = ts.years.size();
  if (ts.xs.size() != n || ts.ys.size() != n) {
    fail(ErrorKind::LengthMismatch, "years, xs and ys must have equal length");
  }
  if (n < 4) {
    fail(ErrorKind::InsufficientData,
         "need at least 4 observations, got " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(ts.xs[i] > 0.0) || !(ts.ys[i] > 0.0) || !std::isfinite(ts.xs[i]) ||
        !std::isfinite(ts.ys[i])) {
      fail(ErrorKind::NonPositiveValue,
           "observation for year " + std::to_string(ts.years[i]) + " is not strictly positive");
    }
    if (i > 0 && ts.years[i] != ts.years[i - 1] + 1) {
      fail(ErrorKind::ValidationError, "years must be consecutive: " +
                                           std::to_string(ts.years[i - 1]) + " is followed by " +
                                           std::to_string(ts.years[i]));
    }
  }
}

RatioProblem build_ratio_rows(const TimeSeries& ts) {
  validate_series(ts);
  const std::size_t rows = ts.size() - 1;
  RatioProblem p;
  for (RatioSystem* sys : {&p.x_eq, &p.y_eq}) {
    sys->response.reserve(rows);
    sys->reg_x.assign(ts.xs.begin(), ts.xs.end() - 1);
    sys->reg_y.assign(ts.ys.begin(), ts.ys.end() - 1);
  }
  for (std::size_t k = 0; k < rows; ++k) {
    p.x_eq.response.push_back(ts.xs[k] / ts.xs[k + 1]);
    p.y_eq.response.push_back(ts.ys[k] / ts.ys[k + 1]);
  }
  return p;
}

std::array<double, 2> solve_zero_intercept(const RatioSystem& sys, double* condition) {
  const std::size_t m = sys.rows();
  if (m < 2 || sys.reg_x.size() != m || sys.reg_y.size() != m) {
    fail(ErrorKind::InsufficientData, "need at least two regression rows");
  }
  // Equilibrate columns to unit norm so the pivot/condition tests see
  // collinearity rather than units.
  double nx = 0.0, ny = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    nx += sys.reg_x[k] * sys.reg_x[k];
    ny += sys.reg_y[k] * sys.reg_y[k];
  }
  nx = std::sqrt(nx);
  ny = std::sqrt(ny);
  if (nx == 0.0 || ny == 0.0) fail(ErrorKind::SingularDesign, "a regressor column is all zero");

  double g00 = 0.0, g01 = 0.0, g11 = 0.0, r0 = 0.0, r1 = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double u = sys.reg_x[k] / nx;
    const double v = sys.reg_y[k] / ny;
    g00 += u * u;
    g01 += u * v;
    g11 += v * v;
    r0 += u * sys.response[k];
    r1 += v * sys.response[k];
  }

  // eigenvalues of the symmetric Gram matrix
  const double half_tr = 0.5 * (g00 + g11);
  const double half_gap = std::hypot(0.5 * (g00 - g11), g01);
  const double lmax = half_tr + half_gap;
  const double lmin = (g00 * g11 - g01 * g01) / lmax;
  const double cond = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
  if (condition != nullptr) *condition = cond;
  if (!(cond < kSingularThreshold)) {
    fail(ErrorKind::SingularDesign, "collinear regressors (condition number " +
                                        std::to_string(cond) + ")");
  }

  // Gaussian elimination with partial pivoting on the 2x2 normal equations.
  double a00 = g00, a01 = g01, a10 = g01, a11 = g11, b0 = r0, b1 = r1;
  if (std::abs(a10) > std::abs(a00)) {
    std::swap(a00, a10);
    std::swap(a01, a11);
    std::swap(b0, b1);
  }
  const double l = a10 / a00;
  const double u11 = a11 - l * a01;
  const double z1 = b1 - l * b0;
  const double c1 = z1 / u11;
  const double c0 = (b0 - a01 * c1) / a00;
  return {c0 / nx, c1 / ny};
}

namespace {

struct EquationFit {
  double intercept = 0.0;
  double on_x = 0.0;
  double on_y = 0.0;
  double adj_r2 = 0.0;
  double adj_r2_full = 0.0;
  double condition = 0.0;
};

EquationFit fit_equation(const RatioSystem& sys) {
  EquationFit f;
  const auto [cx, cy] = solve_zero_intercept(sys, &f.condition);
  f.on_x = cx;
  f.on_y = cy;
  const std::size_t m = sys.rows();

  double residual_sum = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    residual_sum += sys.response[k] - (cx * sys.reg_x[k] + cy * sys.reg_y[k]);
  }
  f.intercept = residual_sum / static_cast<double>(m);

  const double mean_r =
      std::accumulate(sys.response.begin(), sys.response.end(), 0.0) / static_cast<double>(m);
  double sse_slope = 0.0, sse_full = 0.0, sst_raw = 0.0, sst_centered = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double slope_only = cx * sys.reg_x[k] + cy * sys.reg_y[k];
    const double e0 = sys.response[k] - slope_only;
    const double e1 = e0 - f.intercept;
    sse_slope += e0 * e0;
    sse_full += e1 * e1;
    sst_raw += sys.response[k] * sys.response[k];
    sst_centered += (sys.response[k] - mean_r) * (sys.response[k] - mean_r);
  }
  const double md = static_cast<double>(m);
  // zero-intercept convention: uncentered R^2 with m - 2 residual dof
  const double r2 = 1.0 - sse_slope / sst_raw;
  f.adj_r2 = m > 2 ? 1.0 - (1.0 - r2) * md / (md - 2.0) : r2;
  if (sst_centered > 0.0 && m > 3) {
    const double r2_full = 1.0 - sse_full / sst_centered;
    f.adj_r2_full = 1.0 - (1.0 - r2_full) * (md - 1.0) / (md - 3.0);
  } else {
    f.adj_r2_full = std::numeric_limits<double>::quiet_NaN();
  }
  return f;
}

}  // namespace

RegressionCoeffs fit_zero_intercept(const TimeSeries& ts, FitDiagnostics* diagnostics) {
  const RatioProblem p = build_ratio_rows(ts);
  const EquationFit fx = fit_equation(p.x_eq);
  const EquationFit fy = fit_equation(p.y_eq);

  RegressionCoeffs rc;
  rc.x = {fx.intercept, fx.on_x, fx.on_y, fx.adj_r2, fx.adj_r2_full};
  // y equation: own state is y, the other is x
  rc.y = {fy.intercept, fy.on_y, fy.on_x, fy.adj_r2, fy.adj_r2_full};

  if (diagnostics != nullptr) {
    diagnostics->condition_number = std::max(fx.condition, fy.condition);
    diagnostics->warnings.clear();
    if (diagnostics->condition_number > kIllConditionedThreshold) {
      diagnostics->warnings.push_back("IllConditioned: condition number " +
                                      std::to_string(diagnostics->condition_number));
    }
    for (const auto* eq : {&rc.x, &rc.y}) {
      if (!(eq->intercept > 0.0) || eq->intercept == 1.0) {
        diagnostics->warnings.push_back(
            "post-hoc intercept outside (0, 1) u (1, inf): discrete transform undefined");
        break;
      }
    }
  }
  return rc;
}

State discrete_step(const DiscreteParams& dp, State s) {
  const double den_x = 1.0 - dp.x.self * s.x - dp.x.cross * s.y;
  const double den_y = 1.0 - dp.y.self * s.y - dp.y.cross * s.x;
  if (std::abs(den_x) < kDenominatorFloor || std::abs(den_y) < kDenominatorFloor) {
    fail(ErrorKind::DenominatorNearZero,
         "map denominator vanishes at (" + std::to_string(s.x) + ", " + std::to_string(s.y) + ")");
  }
  const State next{dp.x.alpha * s.x / den_x, dp.y.alpha * s.y / den_y};
  if (!std::isfinite(next.x) || !std::isfinite(next.y) || std::abs(next.x) > kOverflowLimit ||
      std::abs(next.y) > kOverflowLimit) {
    fail(ErrorKind::Overflow, "state exceeds 1e300");
  }
  return next;
}

Trajectory one_step_predictions(const DiscreteParams& dp, const TimeSeries& ts) {
  validate_series(ts);
  Trajectory out;
  out.xs.reserve(ts.size());
  out.ys.reserve(ts.size());
  out.push_back({ts.xs[0], ts.ys[0]});
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    out.push_back(discrete_step(dp, {ts.xs[k], ts.ys[k]}));
  }
  return out;
}

Trajectory free_run(const DiscreteParams& dp, State x0, std::size_t steps) {
  Trajectory out;
  out.xs.reserve(steps + 1);
  out.ys.reserve(steps + 1);
  out.push_back(x0);
  State s = x0;
  for (std::size_t k = 0; k < steps; ++k) {
    s = discrete_step(dp, s);
    out.push_back(s);
  }
  return out;
}

double mape(std::span<const double> observed, std::span<const double> fitted) {
  if (observed.size() != fitted.size()) {
    fail(ErrorKind::LengthMismatch, "observed has " + std::to_string(observed.size()) +
                                        " values, fitted has " + std::to_string(fitted.size()));
  }
  if (observed.empty()) fail(ErrorKind::LengthMismatch, "empty series");
  double acc = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (observed[i] == 0.0) {
      fail(ErrorKind::ZeroObserved, "observed value at index " + std::to_string(i) + " is zero");
    }
    acc += std::abs((observed[i] - fitted[i]) / observed[i]);
  }
  return 100.0 * acc / static_cast<double>(observed.size());
}

std::string_view to_string(FitMode m) noexcept {
  return m == FitMode::OneStepAhead ? "one-step" : "free-running";
}

FitMode parse_fit_mode(std::string_view s) {
  if (s == "one-step" || s == "onestep" || s == "OneStepAhead") return FitMode::OneStepAhead;
  if (s == "free-running" || s == "free" || s == "FreeRunning") return FitMode::FreeRunning;
  fail(ErrorKind::ValidationError, "unknown fit mode '" + std::string(s) +
                                       "' (expected one-step or free-running)");
}

FitReport evaluate_fit(const RegressionCoeffs& coeffs, const DiscreteParams& dp,
                       const TimeSeries& ts, FitMode mode) {
  validate_series(ts);
  FitReport r;
  r.coeffs = coeffs;
  r.mode = mode;
  r.fitted = mode == FitMode::OneStepAhead
                 ? one_step_predictions(dp, ts)
                 : free_run(dp, {ts.xs[0], ts.ys[0]}, ts.size() - 1);
  const std::span<const double> ox(ts.xs), oy(ts.ys), fx(r.fitted.xs), fy(r.fitted.ys);
  r.mape_x = mape(ox.subspan(1), fx.subspan(1));
  r.mape_y = mape(oy.subspan(1), fy.subspan(1));
  return r;
}

FitReport fit_series(const TimeSeries& ts, FitMode mode, FitDiagnostics* diagnostics) {
  const RegressionCoeffs rc = fit_zero_intercept(ts, diagnostics);
  return evaluate_fit(rc, regression_to_discrete(rc), ts, mode);
}

}  // namespace lvdyn
