#pragma once

// Parameter layers of the two-species Lotka-Volterra system and the
// transforms between them.
//
//   continuous   dx/dt = x (a1 + b11 x + b12 y)
//                dy/dt = y (a2 + b21 x + b22 y)
//   discrete     x(k+1) = alpha1 x(k) / (1 - self1 x(k) - cross1 y(k))
//                y(k+1) = alpha2 y(k) / (1 - self2 y(k) - cross2 x(k))
//   regression   x(k)/x(k+1) = intercept1 + self1' x(k) + cross1' y(k)
//                y(k)/y(k+1) = intercept2 + cross2' x(k) + self2' y(k)
//
// Discrete and regression coefficients are stored by role (self/cross) and
// never by Greek letter.

#include <array>
#include <string_view>

namespace lvdyn {

struct ContinuousParams {
  double a1 = 0.0;
  double b11 = 0.0;
  double b12 = 0.0;
  double a2 = 0.0;
  double b21 = 0.0;
  double b22 = 0.0;

  static constexpr std::size_t kCount = 6;
  static constexpr std::array<std::string_view, kCount> kNames{"a1", "b11", "b12",
                                                               "a2", "b21", "b22"};

  std::array<double, kCount> to_array() const { return {a1, b11, b12, a2, b21, b22}; }
  static ContinuousParams from_array(const std::array<double, kCount>& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
  }
  bool is_finite() const;
  bool operator==(const ContinuousParams&) const = default;
};

struct DiscreteEquation {
  double alpha = 1.0;  // growth multiplier
  double self = 0.0;   // denominator coefficient on own state
  double cross = 0.0;  // denominator coefficient on the other state
};

struct DiscreteParams {
  DiscreteEquation x;
  DiscreteEquation y;
};

struct RatioEquation {
  double intercept = 0.0;  // alpha' = 1/alpha
  double self = 0.0;       // -self_discrete/alpha
  double cross = 0.0;      // -cross_discrete/alpha
  double adj_r2 = 0.0;     // zero-intercept (uncentered) adjusted R^2
  double adj_r2_full = 0.0;  // centered adjusted R^2 of the three-term fit
};

struct RegressionCoeffs {
  RatioEquation x;
  RatioEquation y;
};

DiscreteParams regression_to_discrete(const RegressionCoeffs& rc);
RegressionCoeffs discrete_to_regression(const DiscreteParams& dp);
ContinuousParams discrete_to_continuous(const DiscreteParams& dp);
DiscreteParams continuous_to_discrete(const ContinuousParams& cp);

/// Checks the logistic sign pattern a_i > 0, b_ii < 0 expected of fitted
/// systems. Returns false rather than throwing.
bool has_logistic_signs(const ContinuousParams& cp);

enum class Interaction {
  PureCompetition,
  Mutualism,
  PredatorPrey,
  Amensalism,
  Commensalism,
  Neutralism,
};

enum class Species { X, Y, None };

struct InteractionType {
  Interaction kind = Interaction::Neutralism;
  Species prey = Species::None;  // set only for PredatorPrey
  bool operator==(const InteractionType&) const = default;
};

/// Sign-table classification on (b12, b21). Values with |v| <= tol count as
/// zero. For predator-prey the prey is the species whose incoming
/// cross-effect is negative while its outgoing cross-effect is positive.
InteractionType classify_interaction(const ContinuousParams& cp, double tol = 0.0);

std::string_view to_string(Interaction kind) noexcept;
std::string_view to_string(Species s) noexcept;

}  // namespace lvdyn
