#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "lvdyn/case_study.hpp"
#include "lvdyn/error.hpp"
#include "lvdyn/fitting.hpp"

namespace lvdyn {
namespace {

TimeSeries make_series(std::vector<double> xs, std::vector<double> ys, int first_year = 2000) {
  TimeSeries ts;
  ts.label_x = "x";
  ts.label_y = "y";
  ts.xs = std::move(xs);
  ts.ys = std::move(ys);
  for (std::size_t i = 0; i < ts.xs.size(); ++i) ts.years.push_back(first_year + static_cast<int>(i));
  return ts;
}

TimeSeries series_from_map(const DiscreteParams& dp, State x0, std::size_t n) {
  const Trajectory t = free_run(dp, x0, n - 1);
  return make_series(t.xs, t.ys);
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no lvdyn::Error thrown";
  return ErrorKind::InvalidArgument;
}

TEST(BuildRatioRows, FirstAndPenultimateRows) {
  const TimeSeries ts = case_study::bundled_series(case_study::Subsystem::AiPhysical);
  const RatioProblem p = build_ratio_rows(ts);
  ASSERT_EQ(p.x_eq.rows(), 7u);
  EXPECT_NEAR(p.x_eq.response[0], 15.40 / 31.80, 1e-12);
  EXPECT_NEAR(p.x_eq.response[0], 0.48428, 5e-6);
  EXPECT_DOUBLE_EQ(p.x_eq.reg_x[0], 15.40);
  EXPECT_DOUBLE_EQ(p.x_eq.reg_y[0], 37202.10);
  EXPECT_NEAR(p.y_eq.response[6], 0.97304, 5e-6);
}

TEST(BuildRatioRows, ConstantSeriesGivesUnitResponses) {
  const RatioProblem p = build_ratio_rows(make_series({3, 3, 3, 3, 3}, {7, 7, 7, 7, 7}));
  for (double r : p.x_eq.response) EXPECT_EQ(r, 1.0);
  for (double r : p.y_eq.response) EXPECT_EQ(r, 1.0);
}

TEST(BuildRatioRows, RejectsShortOrNonPositiveSeries) {
  EXPECT_EQ(kind_of([] { build_ratio_rows(make_series({1, 2, 3}, {1, 2, 3})); }),
            ErrorKind::InsufficientData);
  EXPECT_EQ(kind_of([] { build_ratio_rows(make_series({1, 2, 0, 4}, {1, 2, 3, 4})); }),
            ErrorKind::NonPositiveValue);
}

TEST(FitZeroIntercept, PhysicalSlopesMatchTable) {
  const TimeSeries ts = case_study::bundled_series(case_study::Subsystem::AiPhysical);
  FitDiagnostics diag;
  const RegressionCoeffs rc = fit_zero_intercept(ts, &diag);
  EXPECT_NEAR(rc.x.self, 0.001769, 0.001769 * 0.01);
  EXPECT_NEAR(rc.x.cross, 0.000012, 0.000012 * 0.05);
  EXPECT_NEAR(rc.y.cross, -0.001578, 0.001578 * 0.01);
  EXPECT_NEAR(rc.y.self, 0.000025, 0.000025 * 0.05);
  EXPECT_GE(rc.x.adj_r2, 0.98);
  EXPECT_GE(rc.y.adj_r2, 0.98);
  EXPECT_LT(diag.condition_number, kIllConditionedThreshold);
  EXPECT_TRUE(diag.warnings.empty());
}

// Ratios generated without an intercept are exactly representable by the
// slope-only fit, so both slopes and the (zero) post-hoc intercept come back.
TEST(FitZeroIntercept, RecoversInterceptFreeRatioModel) {
  const double sx = 0.004, cx = 0.0007, sy = 0.002, cy = -0.0009;
  std::vector<double> xs{20.0}, ys{300.0};
  for (int k = 0; k < 9; ++k) {
    const double x = xs.back(), y = ys.back();
    xs.push_back(x / (sx * x + cx * y));
    ys.push_back(y / (cy * x + sy * y));
  }
  const RegressionCoeffs rc = fit_zero_intercept(make_series(xs, ys));
  EXPECT_NEAR(rc.x.self / sx, 1.0, 1e-10);
  EXPECT_NEAR(rc.x.cross / cx, 1.0, 1e-10);
  EXPECT_NEAR(rc.y.self / sy, 1.0, 1e-10);
  EXPECT_NEAR(rc.y.cross / cy, 1.0, 1e-10);
  EXPECT_NEAR(rc.x.intercept, 0.0, 1e-12);
  EXPECT_NEAR(rc.y.intercept, 0.0, 1e-12);
}

TEST(FitZeroIntercept, FullModelResidualsHaveZeroMean) {
  DiscreteParams dp;
  dp.x = {1.8, -0.02, -0.001};
  dp.y = {1.5, -0.01, 0.002};
  for (const TimeSeries& ts : {series_from_map(dp, {1.0, 2.0}, 12),
                               case_study::bundled_series(case_study::Subsystem::AiLabor)}) {
    const RegressionCoeffs rc = fit_zero_intercept(ts);
    const RatioProblem p = build_ratio_rows(ts);
    double sum_x = 0.0, sum_y = 0.0;
    for (std::size_t k = 0; k < p.x_eq.rows(); ++k) {
      sum_x += p.x_eq.response[k] -
               (rc.x.intercept + rc.x.self * p.x_eq.reg_x[k] + rc.x.cross * p.x_eq.reg_y[k]);
      sum_y += p.y_eq.response[k] -
               (rc.y.intercept + rc.y.cross * p.y_eq.reg_x[k] + rc.y.self * p.y_eq.reg_y[k]);
    }
    EXPECT_NEAR(sum_x / p.x_eq.rows(), 0.0, 1e-12);
    EXPECT_NEAR(sum_y / p.y_eq.rows(), 0.0, 1e-12);
  }
}

TEST(FitZeroIntercept, CollinearRegressorsAreSingular) {
  // y is a fixed multiple of x, so the two design columns are collinear.
  const TimeSeries ts = make_series({1, 2, 4, 8, 16}, {3, 6, 12, 24, 48});
  EXPECT_EQ(kind_of([&] { fit_zero_intercept(ts); }), ErrorKind::SingularDesign);
  EXPECT_EQ(kind_of([] { fit_zero_intercept(make_series({5, 5, 5, 5}, {2, 2, 2, 2})); }),
            ErrorKind::SingularDesign);
}

TEST(SolveZeroIntercept, ExactTwoColumnSystem) {
  RatioSystem sys;
  sys.reg_x = {1, 2, 3, 4};
  sys.reg_y = {1, -1, 2, 0.5};
  for (std::size_t i = 0; i < 4; ++i) sys.response.push_back(0.25 * sys.reg_x[i] - 2.0 * sys.reg_y[i]);
  double cond = 0.0;
  const auto b = solve_zero_intercept(sys, &cond);
  EXPECT_NEAR(b[0], 0.25, 1e-13);
  EXPECT_NEAR(b[1], -2.0, 1e-13);
  EXPECT_GE(cond, 1.0);
}

TEST(DiscreteStep, PublishedPhysicalFirstStep) {
  const auto table = case_study::published_table(case_study::Subsystem::AiPhysical);
  const State next = discrete_step(table.discrete, {15.40, 37202.10});
  // observed 31.80; the aggregate one-step error of the table is about 6%
  EXPECT_NEAR(next.x, 31.80, 31.80 * 0.15);
  EXPECT_NEAR(next.y, 39492.60, 39492.60 * 0.05);
}

TEST(DiscreteStep, GeometricGrowthWithoutCoefficients) {
  DiscreteParams dp;
  dp.x = {1.0 + 1e-3, 0.0, 0.0};
  dp.y = {0.5, 0.0, 0.0};
  const State s = discrete_step(dp, {10.0, 4.0});
  EXPECT_DOUBLE_EQ(s.x, 10.0 * (1.0 + 1e-3));
  EXPECT_DOUBLE_EQ(s.y, 2.0);
}

TEST(DiscreteStep, ZeroDenominatorIsReported) {
  DiscreteParams dp;
  dp.x = {2.0, 0.5, 0.0};  // 1 - 0.5 * 2 = 0
  dp.y = {2.0, 0.0, 0.0};
  EXPECT_EQ(kind_of([&] { discrete_step(dp, {2.0, 1.0}); }), ErrorKind::DenominatorNearZero);
}

TEST(FreeRun, GeometricSequence) {
  DiscreteParams dp;
  dp.x = {2.0, 0.0, 0.0};
  dp.y = {3.0, 0.0, 0.0};
  const Trajectory t = free_run(dp, {1.0, 1.0}, 3);
  EXPECT_EQ(t.xs, (std::vector<double>{1, 2, 4, 8}));
  EXPECT_EQ(t.ys, (std::vector<double>{1, 3, 9, 27}));
}

TEST(FreeRun, ZeroStepsIsIdentity) {
  DiscreteParams dp;
  dp.x = {2.0, 0.0, 0.0};
  dp.y = {3.0, 0.0, 0.0};
  const Trajectory t = free_run(dp, {1.5, 2.5}, 0);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.at(0), (State{1.5, 2.5}));
}

TEST(FreeRun, OverflowIsReported) {
  DiscreteParams dp;
  dp.x = {1e200, 0.0, 0.0};
  dp.y = {2.0, 0.0, 0.0};
  EXPECT_EQ(kind_of([&] { free_run(dp, {1.0, 1.0}, 5); }), ErrorKind::Overflow);
}

TEST(FreeRun, LaborApproachesEquilibrium) {
  const auto table = case_study::published_table(case_study::Subsystem::AiLabor);
  const Trajectory t = free_run(table.discrete, {15.40, 22770.0}, 7);
  const State end = t.at(7);
  EXPECT_LT(std::abs(end.x - 186.78) / 186.78, 0.1);
  EXPECT_LT(std::abs(end.y - 44021.09) / 44021.09, 0.1);
}

TEST(OneStepPredictions, AgreesWithFreeRunOnFirstStep) {
  const auto table = case_study::published_table(case_study::Subsystem::AiPhysical);
  const TimeSeries ts = case_study::bundled_series(case_study::Subsystem::AiPhysical);
  const Trajectory one = one_step_predictions(table.discrete, ts);
  const Trajectory free = free_run(table.discrete, {ts.xs[0], ts.ys[0]}, ts.size() - 1);
  ASSERT_EQ(one.size(), ts.size());
  ASSERT_EQ(free.size(), ts.size());
  EXPECT_EQ(one.at(0), free.at(0));
  EXPECT_EQ(one.at(1), free.at(1));
  EXPECT_EQ(one.xs[0], ts.xs[0]);
}

TEST(Mape, HandComputable) {
  const std::vector<double> obs{100, 200}, fit{90, 220};
  EXPECT_DOUBLE_EQ(mape(obs, fit), 10.0);
  EXPECT_EQ(mape(obs, obs), 0.0);
}

TEST(Mape, ScaleInvariant) {
  const std::vector<double> obs{3.0, 7.5, 11.0, 0.2}, fit{2.5, 8.0, 10.0, 0.25};
  const double base = mape(obs, fit);
  for (double c : {1e-6, 0.3, 7.0, 1e9}) {
    std::vector<double> so, sf;
    for (double v : obs) so.push_back(v * c);
    for (double v : fit) sf.push_back(v * c);
    EXPECT_NEAR(mape(so, sf), base, 1e-12 * base);
  }
}

TEST(Mape, RejectsZeroObservedAndLengthMismatch) {
  const std::vector<double> zero{1.0, 0.0}, fit{1.0, 1.0}, shorter{1.0};
  EXPECT_EQ(kind_of([&] { mape(zero, fit); }), ErrorKind::ZeroObserved);
  EXPECT_EQ(kind_of([&] { mape(fit, shorter); }), ErrorKind::LengthMismatch);
}

TEST(EvaluateFit, ExcludesTheFirstPoint) {
  const auto table = case_study::published_table(case_study::Subsystem::AiPhysical);
  const TimeSeries ts = case_study::bundled_series(case_study::Subsystem::AiPhysical);
  const FitReport r = evaluate_fit(table.primed, table.discrete, ts, FitMode::OneStepAhead);
  const std::span<const double> obs(ts.xs), fit(r.fitted.xs);
  EXPECT_DOUBLE_EQ(r.mape_x, mape(obs.subspan(1), fit.subspan(1)));
  EXPECT_GE(r.mape_x, 0.0);
  EXPECT_NEAR(r.mape_x, 6.15, 1.5);
  EXPECT_NEAR(r.mape_y, 1.25, 1.5);
}

TEST(FitMode, Parsing) {
  EXPECT_EQ(parse_fit_mode("one-step"), FitMode::OneStepAhead);
  EXPECT_EQ(parse_fit_mode("free-running"), FitMode::FreeRunning);
  EXPECT_THROW(parse_fit_mode("sideways"), Error);
}

}  // namespace
}  // namespace lvdyn
