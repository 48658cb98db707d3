#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lvdyn/params.hpp"
#include "lvdyn/series.hpp"

namespace lvdyn {

/// One ratio regression: response[k] = state(k)/state(k+1) against the
/// regressors x(k), y(k).
struct RatioSystem {
  std::vector<double> response;
  std::vector<double> reg_x;
  std::vector<double> reg_y;

  std::size_t rows() const { return response.size(); }
};

struct RatioProblem {
  RatioSystem x_eq;  // x(k)/x(k+1)
  RatioSystem y_eq;  // y(k)/y(k+1)
};

RatioProblem build_ratio_rows(const TimeSeries& ts);

inline constexpr double kIllConditionedThreshold = 1e12;
inline constexpr double kSingularThreshold = 1e15;

struct FitDiagnostics {
  double condition_number = 0.0;  // of the column-equilibrated Gram matrix
  std::vector<std::string> warnings;
};

/// Zero-intercept least squares for the two slopes of each ratio system,
/// followed by the post-hoc intercept (mean residual of the slope-only
/// fit) and both adjusted R^2 variants.
RegressionCoeffs fit_zero_intercept(const TimeSeries& ts, FitDiagnostics* diagnostics = nullptr);

/// Least-squares slopes (no intercept) for one ratio system: {coef on x, coef on y}.
std::array<double, 2> solve_zero_intercept(const RatioSystem& sys, double* condition = nullptr);

inline constexpr double kDenominatorFloor = 1e-12;
inline constexpr double kOverflowLimit = 1e300;

/// Applies one step of the discrete map; throws DenominatorNearZero / Overflow.
State discrete_step(const DiscreteParams& dp, State s);

/// x^(k+1) from the empirical state at k. Entry 0 is the first observation.
Trajectory one_step_predictions(const DiscreteParams& dp, const TimeSeries& ts);

/// Iterates the discrete map feeding each output back in; size steps+1.
Trajectory free_run(const DiscreteParams& dp, State x0, std::size_t steps);

/// Mean absolute percentage error, in percent.
double mape(std::span<const double> observed, std::span<const double> fitted);

enum class FitMode { OneStepAhead, FreeRunning };
std::string_view to_string(FitMode m) noexcept;
FitMode parse_fit_mode(std::string_view s);

struct FitReport {
  RegressionCoeffs coeffs;
  Trajectory fitted;
  double mape_x = 0.0;
  double mape_y = 0.0;
  FitMode mode = FitMode::OneStepAhead;
};

/// Fitted trajectory under `mode` and MAPE over indices 1..n-1 (the first
/// point is the observation itself and is excluded).
FitReport evaluate_fit(const RegressionCoeffs& coeffs, const DiscreteParams& dp,
                       const TimeSeries& ts, FitMode mode);

FitReport fit_series(const TimeSeries& ts, FitMode mode, FitDiagnostics* diagnostics = nullptr);

}  // namespace lvdyn
