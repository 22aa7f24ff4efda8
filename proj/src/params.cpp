#include "ddestab/params.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ddestab {

ParamSet::ParamSet(double a, double delta, double h, double b) : a_(a), delta_(delta), h_(h), b_(b) {
  if (!(a < 0.0)) throw std::invalid_argument("ParamSet: a must be negative, got " + std::to_string(a));
  if (!(delta > 0.0)) throw std::invalid_argument("ParamSet: delta must be positive");
  if (!(h > 0.0)) throw std::invalid_argument("ParamSet: h must be positive");
  if (!(b > 0.0)) throw std::invalid_argument("ParamSet: b must be positive");
}

NormParams::NormParams(double a, double theta, double state_scale)
    : a_(a), theta_(theta), state_scale_(state_scale) {
  if (!(a < 0.0)) throw std::invalid_argument("NormParams: a must be negative, got " + std::to_string(a));
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("NormParams: theta must lie in (0,1), got " + std::to_string(theta));
  if (!(state_scale > 0.0)) throw std::invalid_argument("NormParams: state scale must be positive");
}

double NormParams::h() const { return -std::log(theta_); }
double NormParams::mu() const { return -1.0 / a_; }
double NormParams::lambda() const { return std::exp(theta_ / a_); }
double NormParams::a_star() const { return a_ + theta_ / (1.0 - theta_); }

NormParams normalize(const ParamSet& p) {
  return NormParams(p.a() / p.delta(), std::exp(-p.delta() * p.h()), 1.0 / p.b());
}

double criterion_delta_margin(double a, double delta, double h) {
  const double lhs = (-delta / a) * std::exp(-h * delta);
  // (a^2 - a delta)/(delta^2 + a^2) = 1 + (-a delta - delta^2)/(delta^2 + a^2)
  const double rhs = std::log1p((-a * delta - delta * delta) / (delta * delta + a * a));
  return lhs - rhs;
}

bool criterion_delta(double a, double delta, double h) { return criterion_delta_margin(a, delta, h) > 0.0; }

double criterion_norm_margin(const NormParams& np) {
  const double a = np.a();
  return -np.theta() / a - std::log1p((-a - 1.0) / (a * a + 1.0));
}

bool criterion_norm(const NormParams& np) { return criterion_norm_margin(np) > 0.0; }

double linear_criterion_margin(const NormParams& np) {
  const double a = np.a();
  return -np.theta() / a + (a + 1.0) / (a * a + 1.0);
}

bool linear_criterion(const NormParams& np) { return linear_criterion_margin(np) > 0.0; }

double pi_curve(int j, double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw std::domain_error("pi_curve: mu must lie in (0,1)");
  switch (j) {
    case 1:
      return (1.0 - mu) / (1.0 + mu * mu);
    case 2:
      return std::log1p(mu * (1.0 - mu) / (1.0 + mu * mu)) / mu;
    case 3:
      return (95.0 - 108.0 * mu) / (5.0 * (19.0 + 5.0 * mu));
    case 4:
      return 0.8;
    default:
      throw std::out_of_range("pi_curve: index must be 1..4, got " + std::to_string(j));
  }
}

bool in_domain_D(double theta, double mu) {
  if (!(mu > 0.0 && mu < 1.0 && theta > 0.0 && theta < 1.0)) return false;
  return pi_curve(2, mu) <= theta && theta <= pi_curve(1, mu);
}

bool in_domain_S(double theta, double mu) {
  if (!in_domain_D(theta, mu)) return false;
  return theta >= 0.8 && theta < 1.0 && pi_curve(3, mu) <= theta;
}

bool in_domain_Dstar(double theta, double mu) { return in_domain_D(theta, mu) && !in_domain_S(theta, mu); }

RegionLabel classify(const NormParams& np) {
  if (!criterion_norm(np)) return {Region::NotCertified, RegionReason::CriterionFails};
  if (linear_criterion(np)) return {Region::GloballyStableLinear, RegionReason::None};
  if (np.a() >= -1.0) return {Region::NotCertified, RegionReason::OutsideMuParameterization};

  const double theta = np.theta();
  const double mu = np.mu();
  // criterion_norm is theta > Pi2 and the failed linear test is theta <= Pi1,
  // so the point lies in D.
  if (theta >= 0.8 && pi_curve(3, mu) <= theta && theta <= pi_curve(1, mu))
    return {Region::GloballyStableS, RegionReason::None};
  return {Region::GloballyStableDStar, RegionReason::None};
}

std::string_view to_string(Region r) {
  switch (r) {
    case Region::GloballyStableLinear:
      return "GloballyStableLinear";
    case Region::GloballyStableDStar:
      return "GloballyStableDStar";
    case Region::GloballyStableS:
      return "GloballyStableS";
    case Region::NotCertified:
      return "NotCertified";
  }
  return "?";
}

std::string_view to_string(RegionReason r) {
  switch (r) {
    case RegionReason::None:
      return "none";
    case RegionReason::CriterionFails:
      return "criterion_fails";
    case RegionReason::OutsideMuParameterization:
      return "outside_mu_parameterization";
  }
  return "?";
}

double global_boundary_theta(double c) {
  if (c <= 1.0) return 0.0;
  return c * std::log1p((c - 1.0) / (c * c + 1.0));
}

double global_critical_delay(double a, double delta) {
  const double c = -a / delta;
  const double theta = global_boundary_theta(c);
  if (theta <= 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(theta) / delta;
}

std::optional<double> local_critical_delay(double a, double delta) {
  if (!(a < 0.0 && delta >= 0.0)) throw std::domain_error("local_critical_delay: need a < 0, delta >= 0");
  if (-a <= delta) return std::nullopt;
  // lambda = i w solves i w = -delta + a exp(-i w h):
  //   cos(w h) = delta / a,  w = -a sin(w h)  =>  w = sqrt(a^2 - delta^2).
  const double omega = std::sqrt((-a - delta) * (-a + delta));
  const double phase = std::acos(delta / a);  // in (pi/2, pi]
  return phase / omega;
}

std::optional<double> local_stability_boundary(double a_over_delta) {
  auto h = local_critical_delay(a_over_delta, 1.0);
  if (!h) return std::nullopt;
  return std::exp(-*h);
}

}  // namespace ddestab
