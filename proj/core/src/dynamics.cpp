#include "lvdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "lvdyn/error.hpp"

namespace lvdyn {

State vector_field(const ContinuousParams& cp, State p) {
  return {p.x * (cp.a1 + cp.b11 * p.x + cp.b12 * p.y),
          p.y * (cp.a2 + cp.b21 * p.x + cp.b22 * p.y)};
}

std::optional<State> interior_equilibrium(const ContinuousParams& cp) {
  const double cross = cp.b12 * cp.b21;
  const double self = cp.b11 * cp.b22;
  const double den = cross - self;
  const double scale = std::max(std::abs(cross), std::abs(self));
  if (scale == 0.0 || !(std::abs(den) >= 1e-15 * scale)) return std::nullopt;
  return State{(cp.a1 * cp.b22 - cp.b12 * cp.a2) / den, (cp.b11 * cp.a2 - cp.a1 * cp.b21) / den};
}

EquilibriumSet equilibria(const ContinuousParams& cp) {
  EquilibriumSet set;
  if (cp.b11 != 0.0) set.axial_x = State{-cp.a1 / cp.b11, 0.0};
  if (cp.b22 != 0.0) set.axial_y = State{0.0, -cp.a2 / cp.b22};
  set.interior = interior_equilibrium(cp);
  return set;
}

Matrix2 jacobian_at(const ContinuousParams& cp, State p) {
  return {cp.a1 + 2.0 * cp.b11 * p.x + cp.b12 * p.y, cp.b12 * p.x,
          cp.b21 * p.y, cp.a2 + cp.b21 * p.x + 2.0 * cp.b22 * p.y};
}

EigenPair eigenvalues(const Matrix2& m) {
  const double half_tr = 0.5 * (m.a00 + m.a11);
  const double half_diff = 0.5 * (m.a00 - m.a11);
  // discriminant of l^2 - tr l + det, divided by 4, without forming tr^2 - 4 det
  const double disc = half_diff * half_diff + m.a01 * m.a10;
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    const double det = m.det();
    double l1, l2;
    if (half_tr >= 0.0) {
      l1 = half_tr + s;
      l2 = l1 != 0.0 ? det / l1 : half_tr - s;
    } else {
      l2 = half_tr - s;
      l1 = det / l2;
    }
    if (l1 < l2) std::swap(l1, l2);
    return {std::complex<double>(l1, 0.0), std::complex<double>(l2, 0.0)};
  }
  const double w = std::sqrt(-disc);
  return {std::complex<double>(half_tr, w), std::complex<double>(half_tr, -w)};
}

Stability classify_stability(const EigenPair& eigs, double tol) {
  const double r1 = eigs[0].real(), r2 = eigs[1].real();
  const double i1 = eigs[0].imag(), i2 = eigs[1].imag();
  const bool real_pair = std::abs(i1) <= tol && std::abs(i2) <= tol;
  if (real_pair) {
    if ((r1 < -tol && r2 > tol) || (r1 > tol && r2 < -tol)) return Stability::Saddle;
    if (std::abs(r1 - r2) <= tol) return Stability::Degenerate;  // repeated
    if (r1 < -tol && r2 < -tol) return Stability::StableNode;
    if (r1 > tol && r2 > tol) return Stability::UnstableNode;
    return Stability::Degenerate;  // a zero eigenvalue
  }
  const double re = 0.5 * (r1 + r2);
  if (re < -tol) return Stability::StableFocus;
  if (re > tol) return Stability::UnstableFocus;
  return Stability::Center;
}

std::string_view to_string(Stability s) noexcept {
  switch (s) {
    case Stability::StableNode: return "StableNode";
    case Stability::UnstableNode: return "UnstableNode";
    case Stability::Saddle: return "Saddle";
    case Stability::StableFocus: return "StableFocus";
    case Stability::UnstableFocus: return "UnstableFocus";
    case Stability::Center: return "Center";
    case Stability::Degenerate: return "Degenerate";
  }
  return "Degenerate";
}

StabilityReport analyze_stability(const ContinuousParams& cp, State p, double tol) {
  StabilityReport r;
  r.jacobian = jacobian_at(cp, p);
  r.eigenvalues = eigenvalues(r.jacobian);
  r.classification = classify_stability(r.eigenvalues, tol);
  return r;
}

namespace {

std::int8_t sign_of(double v) { return static_cast<std::int8_t>((v > 0.0) - (v < 0.0)); }

}  // namespace

std::array<std::int8_t, 2> region_signs(const ContinuousParams& cp, State p) {
  return {sign_of(cp.a1 + cp.b11 * p.x + cp.b12 * p.y),
          sign_of(cp.a2 + cp.b21 * p.x + cp.b22 * p.y)};
}

PhaseGeometry phase_geometry(const ContinuousParams& cp, const BBox& bbox, std::size_t grid_n,
                             unsigned workers) {
  const bool finite = std::isfinite(bbox.x_min) && std::isfinite(bbox.x_max) &&
                      std::isfinite(bbox.y_min) && std::isfinite(bbox.y_max);
  if (!finite || !(bbox.x_min > 0.0) || !(bbox.y_min > 0.0) || !(bbox.x_max > bbox.x_min) ||
      !(bbox.y_max > bbox.y_min)) {
    fail(ErrorKind::InvalidBBox, "bounding box must lie in the open first quadrant with min < max");
  }
  if (grid_n < 2) fail(ErrorKind::InvalidArgument, "grid size must be at least 2");

  PhaseGeometry pg;
  pg.nullcline_x = {cp.a1, cp.b11, cp.b12};
  pg.nullcline_y = {cp.a2, cp.b21, cp.b22};
  pg.bbox = bbox;
  pg.grid_n = grid_n;
  pg.grid.resize(grid_n * grid_n);

  const double hx = (bbox.x_max - bbox.x_min) / static_cast<double>(grid_n - 1);
  const double hy = (bbox.y_max - bbox.y_min) / static_cast<double>(grid_n - 1);
  auto fill_rows = [&](std::size_t row_begin, std::size_t row_end) {
    for (std::size_t row = row_begin; row < row_end; ++row) {
      const double y = row + 1 == grid_n ? bbox.y_max : bbox.y_min + hy * static_cast<double>(row);
      for (std::size_t col = 0; col < grid_n; ++col) {
        const double x =
            col + 1 == grid_n ? bbox.x_max : bbox.x_min + hx * static_cast<double>(col);
        GridSample& g = pg.grid[row * grid_n + col];
        const State f = vector_field(cp, {x, y});
        const auto s = region_signs(cp, {x, y});
        g = {x, y, f.x, f.y, s[0], s[1]};
      }
    }
  };

  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(grid_n)));
  if (workers == 1) {
    fill_rows(0, grid_n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (grid_n + workers - 1) / workers;
    for (std::size_t begin = 0; begin < grid_n; begin += chunk) {
      pool.emplace_back(fill_rows, begin, std::min(grid_n, begin + chunk));
    }
  }
  return pg;
}

BBox default_bbox(const ContinuousParams& cp, double margin) {
  double xs = 0.0, ys = 0.0;
  if (const auto eq = interior_equilibrium(cp); eq && eq->x > 0.0 && eq->y > 0.0) {
    xs = eq->x;
    ys = eq->y;
  } else {
    const EquilibriumSet set = equilibria(cp);
    xs = set.axial_x && set.axial_x->x > 0.0 ? set.axial_x->x : 1.0;
    ys = set.axial_y && set.axial_y->y > 0.0 ? set.axial_y->y : 1.0;
  }
  const double x_max = margin * xs;
  const double y_max = margin * ys;
  return {1e-3 * x_max, x_max, 1e-3 * y_max, y_max};
}

std::vector<State> sample_line(const Line& line, const BBox& bbox, std::size_t count) {
  std::vector<State> hits;
  const double ex = 1e-12 * (bbox.x_max - bbox.x_min);
  const double ey = 1e-12 * (bbox.y_max - bbox.y_min);
  auto inside = [&](State p) {
    return p.x >= bbox.x_min - ex && p.x <= bbox.x_max + ex && p.y >= bbox.y_min - ey &&
           p.y <= bbox.y_max + ey;
  };
  if (line.c != 0.0) {
    for (double x : {bbox.x_min, bbox.x_max}) {
      const State p{x, -(line.a + line.b * x) / line.c};
      if (inside(p)) hits.push_back(p);
    }
  }
  if (line.b != 0.0) {
    for (double y : {bbox.y_min, bbox.y_max}) {
      const State p{-(line.a + line.c * y) / line.b, y};
      if (inside(p)) hits.push_back(p);
    }
  }
  if (hits.size() < 2 || count == 0) return {};
  const auto [lo, hi] = std::minmax_element(hits.begin(), hits.end(), [](State a, State b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  const State p0 = *lo, p1 = *hi;
  std::vector<State> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(count - 1);
    out.push_back({p0.x + t * (p1.x - p0.x), p0.y + t * (p1.y - p0.y)});
  }
  return out;
}

namespace {

State rk4_step(const ContinuousParams& cp, State s, double h) {
  const State k1 = vector_field(cp, s);
  const State k2 = vector_field(cp, {s.x + 0.5 * h * k1.x, s.y + 0.5 * h * k1.y});
  const State k3 = vector_field(cp, {s.x + 0.5 * h * k2.x, s.y + 0.5 * h * k2.y});
  const State k4 = vector_field(cp, {s.x + h * k3.x, s.y + h * k3.y});
  return {s.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
          s.y + h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y)};
}

double relative_gap(double coarse, double fine, double previous) {
  const double scale = std::max({std::abs(fine), std::abs(previous), 1e-300});
  return std::abs(coarse - fine) / scale;
}

}  // namespace

TimedTrajectory integrate_ode(const ContinuousParams& cp, State x0, double t_end, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorKind::InvalidArgument, "dt must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    fail(ErrorKind::InvalidArgument, "t_end must be >= 0");
  }
  if (!(x0.x >= 0.0) || !(x0.y >= 0.0)) {
    fail(ErrorKind::NegativeState, "initial state must lie in the closed first quadrant");
  }

  // number of steps, tolerant of t_end being a float multiple of dt
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  TimedTrajectory out;
  out.ts.reserve(steps + 1);
  out.states.xs.reserve(steps + 1);
  out.states.ys.reserve(steps + 1);
  out.ts.push_back(0.0);
  out.states.push_back(x0);

  State s = x0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t0 = static_cast<double>(k) * dt;
    const double h = k + 1 == steps ? t_end - t0 : dt;
    const State full = rk4_step(cp, s, h);
    const State half = rk4_step(cp, rk4_step(cp, s, 0.5 * h), 0.5 * h);
    const double err = std::max(relative_gap(full.x, half.x, s.x), relative_gap(full.y, half.y, s.y));
    out.max_error_estimate = std::max(out.max_error_estimate, err);
    if (!(err <= kStepDoublingTol)) {
      fail(ErrorKind::StepTooLarge, "step-doubling estimate " + std::to_string(err) + " at t = " +
                                        std::to_string(t0) + " exceeds 1e-3");
    }
    if (full.x < -kNegativeStateTol || full.y < -kNegativeStateTol) {
      fail(ErrorKind::NegativeState, "state left the first quadrant at t = " + std::to_string(t0 + h));
    }
    s = full;
    out.ts.push_back(k + 1 == steps ? t_end : t0 + h);
    out.states.push_back(s);
  }
  return out;
}

}  // namespace lvdyn
