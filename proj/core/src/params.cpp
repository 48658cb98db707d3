#include "lvdyn/params.hpp"

#include <cmath>
#include <string>

#include "lvdyn/error.hpp"

namespace lvdyn {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::NonPositiveValue: return "NonPositiveValue";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ZeroObserved: return "ZeroObserved";
    case ErrorKind::InvalidBBox: return "InvalidBBox";
    case ErrorKind::ZeroBaseline: return "ZeroBaseline";
    case ErrorKind::InvalidN: return "InvalidN";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::SingularDesign: return "SingularDesign";
    case ErrorKind::DenominatorNearZero: return "DenominatorNearZero";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::NegativeState: return "NegativeState";
    case ErrorKind::TooManyRejections: return "TooManyRejections";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

ErrorCategory category_of(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::SingularDesign:
    case ErrorKind::DenominatorNearZero:
    case ErrorKind::Overflow:
    case ErrorKind::StepTooLarge:
    case ErrorKind::NegativeState:
    case ErrorKind::TooManyRejections:
      return ErrorCategory::Numerical;
    case ErrorKind::IoError:
      return ErrorCategory::Io;
    default:
      return ErrorCategory::Validation;
  }
}

bool ContinuousParams::is_finite() const {
  for (double v : to_array()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

namespace {

void require_alpha(double alpha, const char* what) {
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
    fail(ErrorKind::DomainError,
         std::string(what) + " = " + std::to_string(alpha) + " (must be > 0 and != 1)");
  }
}

// ln(alpha)/(alpha - 1), positive for every admissible alpha.
double log_scale(double alpha) { return std::log1p(alpha - 1.0) / (alpha - 1.0); }

DiscreteEquation invert_ratio(const RatioEquation& eq, const char* what) {
  if (!(eq.intercept > 0.0) || eq.intercept == 1.0 || !std::isfinite(eq.intercept)) {
    fail(ErrorKind::DomainError, std::string(what) + " intercept = " +
                                     std::to_string(eq.intercept) + " (must be > 0 and != 1)");
  }
  DiscreteEquation d;
  d.alpha = 1.0 / eq.intercept;
  d.self = -eq.self * d.alpha;
  d.cross = -eq.cross * d.alpha;
  return d;
}

RatioEquation to_ratio(const DiscreteEquation& d, const char* what) {
  require_alpha(d.alpha, what);
  RatioEquation eq;
  eq.intercept = 1.0 / d.alpha;
  eq.self = -d.self / d.alpha;
  eq.cross = -d.cross / d.alpha;
  return eq;
}

}  // namespace

DiscreteParams regression_to_discrete(const RegressionCoeffs& rc) {
  return {invert_ratio(rc.x, "x equation"), invert_ratio(rc.y, "y equation")};
}

RegressionCoeffs discrete_to_regression(const DiscreteParams& dp) {
  return {to_ratio(dp.x, "alpha1"), to_ratio(dp.y, "alpha2")};
}

ContinuousParams discrete_to_continuous(const DiscreteParams& dp) {
  require_alpha(dp.x.alpha, "alpha1");
  require_alpha(dp.y.alpha, "alpha2");
  const double s1 = log_scale(dp.x.alpha);
  const double s2 = log_scale(dp.y.alpha);
  ContinuousParams cp;
  cp.a1 = std::log(dp.x.alpha);
  cp.b11 = dp.x.self * s1;
  cp.b12 = dp.x.cross * s1;
  cp.a2 = std::log(dp.y.alpha);
  cp.b21 = dp.y.cross * s2;
  cp.b22 = dp.y.self * s2;
  return cp;
}

DiscreteParams continuous_to_discrete(const ContinuousParams& cp) {
  if (cp.a1 == 0.0 || cp.a2 == 0.0 || !cp.is_finite()) {
    fail(ErrorKind::DomainError, "growth rates must be finite and nonzero (alpha = exp(a) != 1)");
  }
  const double alpha1 = std::exp(cp.a1);
  const double alpha2 = std::exp(cp.a2);
  // (alpha - 1)/ln(alpha) written with expm1 for small growth rates
  const double inv1 = std::expm1(cp.a1) / cp.a1;
  const double inv2 = std::expm1(cp.a2) / cp.a2;
  DiscreteParams dp;
  dp.x = {alpha1, cp.b11 * inv1, cp.b12 * inv1};
  dp.y = {alpha2, cp.b22 * inv2, cp.b21 * inv2};
  return dp;
}

bool has_logistic_signs(const ContinuousParams& cp) {
  return cp.a1 > 0.0 && cp.a2 > 0.0 && cp.b11 < 0.0 && cp.b22 < 0.0;
}

namespace {

int sign_with_tol(double v, double tol) {
  if (std::abs(v) <= tol) return 0;
  return v > 0.0 ? 1 : -1;
}

}  // namespace

InteractionType classify_interaction(const ContinuousParams& cp, double tol) {
  const int s12 = sign_with_tol(cp.b12, tol);  // effect of y on x
  const int s21 = sign_with_tol(cp.b21, tol);  // effect of x on y
  if (s12 == 0 && s21 == 0) return {Interaction::Neutralism, Species::None};
  if (s12 == 0 || s21 == 0) {
    const int nonzero = s12 != 0 ? s12 : s21;
    return {nonzero > 0 ? Interaction::Amensalism : Interaction::Commensalism, Species::None};
  }
  if (s12 > 0 && s21 > 0) return {Interaction::PureCompetition, Species::None};
  if (s12 < 0 && s21 < 0) return {Interaction::Mutualism, Species::None};
  // x receives a negative effect and gives a positive one: x is the prey
  return {Interaction::PredatorPrey, s12 < 0 ? Species::X : Species::Y};
}

std::string_view to_string(Interaction kind) noexcept {
  switch (kind) {
    case Interaction::PureCompetition: return "PureCompetition";
    case Interaction::Mutualism: return "Mutualism";
    case Interaction::PredatorPrey: return "PredatorPrey";
    case Interaction::Amensalism: return "Amensalism";
    case Interaction::Commensalism: return "Commensalism";
    case Interaction::Neutralism: return "Neutralism";
  }
  return "Unknown";
}

std::string_view to_string(Species s) noexcept {
  switch (s) {
    case Species::X: return "x";
    case Species::Y: return "y";
    case Species::None: return "none";
  }
  return "none";
}

}  // namespace lvdyn
