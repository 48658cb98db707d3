#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lvdyn/params.hpp"
#include "lvdyn/series.hpp"

namespace lvdyn {

/// (dx/dt, dy/dt) of the continuous system.
State vector_field(const ContinuousParams& cp, State p);

struct EquilibriumSet {
  State origin{0.0, 0.0};
  std::optional<State> axial_x;   // (-a1/b11, 0)
  std::optional<State> axial_y;   // (0, -a2/b22)
  std::optional<State> interior;  // closed-form intersection of the nullclines
};

/// Interior equilibrium, or nullopt when the denominator
/// b12*b21 - b11*b22 vanishes relative to max(|b12*b21|, |b11*b22|).
std::optional<State> interior_equilibrium(const ContinuousParams& cp);
EquilibriumSet equilibria(const ContinuousParams& cp);

struct Matrix2 {
  double a00 = 0.0, a01 = 0.0;
  double a10 = 0.0, a11 = 0.0;

  double trace() const { return a00 + a11; }
  double det() const { return a00 * a11 - a01 * a10; }
};

Matrix2 jacobian_at(const ContinuousParams& cp, State p);

using EigenPair = std::array<std::complex<double>, 2>;

/// Roots of l^2 - tr l + det, sorted by real part then imaginary part, both descending.
EigenPair eigenvalues(const Matrix2& m);

enum class Stability {
  StableNode,
  UnstableNode,
  Saddle,
  StableFocus,
  UnstableFocus,
  Center,
  Degenerate,
};

inline constexpr double kDefaultStabilityTol = 1e-9;

Stability classify_stability(const EigenPair& eigs, double tol = kDefaultStabilityTol);
std::string_view to_string(Stability s) noexcept;

/// Linearization cannot decide the nonlinear behaviour (non-hyperbolic).
inline bool is_inconclusive(Stability s) {
  return s == Stability::Center || s == Stability::Degenerate;
}

struct StabilityReport {
  Matrix2 jacobian;
  EigenPair eigenvalues;
  Stability classification = Stability::Degenerate;
};

StabilityReport analyze_stability(const ContinuousParams& cp, State p,
                                  double tol = kDefaultStabilityTol);

/// A + B x + C y = 0
struct Line {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double eval(State p) const { return a + b * p.x + c * p.y; }
};

struct BBox {
  double x_min = 0.0, x_max = 0.0;
  double y_min = 0.0, y_max = 0.0;
};

struct GridSample {
  double x = 0.0;
  double y = 0.0;
  double dxdt = 0.0;
  double dydt = 0.0;
  std::int8_t sign_x = 0;
  std::int8_t sign_y = 0;
};

struct PhaseGeometry {
  Line nullcline_x;  // non-trivial branch of dx/dt = 0: a1 + b11 x + b12 y = 0
  Line nullcline_y;  // a2 + b21 x + b22 y = 0
  BBox bbox;
  std::size_t grid_n = 0;
  std::vector<GridSample> grid;  // row-major, rows along y, grid_n * grid_n

  const GridSample& at(std::size_t row, std::size_t col) const { return grid[row * grid_n + col]; }
};

/// Sign of (dx/dt, dy/dt) at p with the trivial factors x, y > 0 divided out.
std::array<std::int8_t, 2> region_signs(const ContinuousParams& cp, State p);

PhaseGeometry phase_geometry(const ContinuousParams& cp, const BBox& bbox, std::size_t grid_n,
                             unsigned workers = 1);

/// A box around the interior equilibrium (or the axial points when absent)
/// scaled by `margin`, clipped to the open first quadrant.
BBox default_bbox(const ContinuousParams& cp, double margin = 2.0);

/// Points of `line` inside `bbox`, sampled along its longer axis.
std::vector<State> sample_line(const Line& line, const BBox& bbox, std::size_t count);

struct TimedTrajectory {
  std::vector<double> ts;
  Trajectory states;
  double max_error_estimate = 0.0;  // largest step-doubling relative estimate
};

inline constexpr double kDefaultDt = 1e-3;
inline constexpr double kStepDoublingTol = 1e-3;
inline constexpr double kNegativeStateTol = 1e-9;

/// Fixed-step classical RK4. Every step is checked by step doubling; a
/// relative estimate above 1e-3 throws StepTooLarge. The last step is
/// shortened to land on t_end.
TimedTrajectory integrate_ode(const ContinuousParams& cp, State x0, double t_end,
                              double dt = kDefaultDt);

}  // namespace lvdyn
