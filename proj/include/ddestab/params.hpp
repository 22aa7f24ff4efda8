#pragma once

#include <optional>
#include <string_view>

namespace ddestab {

// Raw parameters of x'(t) = -delta x(t) + f(t, x_t) with the rational
// feedback bound a M / (1 + b M).
class ParamSet {
 public:
  ParamSet(double a, double delta, double h, double b = 1.0);

  double a() const { return a_; }
  double delta() const { return delta_; }
  double h() const { return h_; }
  double b() const { return b_; }

 private:
  double a_;
  double delta_;
  double h_;
  double b_;
};

// Dimensionless parameters after rescaling time by delta and the state by b:
// the equation becomes x' = -x + f with bound r(x) = a x / (1 + x) and
// delay h' = delta h, recorded through theta = exp(-delta h).
class NormParams {
 public:
  NormParams(double a, double theta, double state_scale = 1.0);

  double a() const { return a_; }
  double theta() const { return theta_; }
  // Multiply a normalized solution by this to recover the raw one (x = y / b).
  double state_scale() const { return state_scale_; }

  double h() const;       // -ln(theta)
  double mu() const;      // -1/a, in (0,1) when a < -1
  double lambda() const;  // exp(theta / a)
  double a_star() const;  // a + theta / (1 - theta)

 private:
  double a_;
  double theta_;
  double state_scale_;
};

NormParams normalize(const ParamSet& p);

// Global stability test for the raw parameters:
//   (-delta/a) exp(-h delta) > ln((a^2 - a delta) / (delta^2 + a^2)).
bool criterion_delta(double a, double delta, double h);
// LHS - RHS of the test above; positive means stable.
double criterion_delta_margin(double a, double delta, double h);

// Normalized form: -theta/a > ln((a^2 - a)/(a^2 + 1)).
bool criterion_norm(const NormParams& np);
double criterion_norm_margin(const NormParams& np);

// Sufficient linear form: -theta/a > -(a + 1)/(a^2 + 1). Implies criterion_norm.
bool linear_criterion(const NormParams& np);
double linear_criterion_margin(const NormParams& np);

// Boundary curves of the (theta, mu) plane. j in 1..4, mu in (0,1).
double pi_curve(int j, double mu);

// Set membership in (theta, mu) coordinates, closed as written.
bool in_domain_D(double theta, double mu);
bool in_domain_S(double theta, double mu);
bool in_domain_Dstar(double theta, double mu);

enum class Region { GloballyStableLinear, GloballyStableDStar, GloballyStableS, NotCertified };

enum class RegionReason {
  None,
  CriterionFails,             // -theta/a <= ln((a^2-a)/(a^2+1))
  OutsideMuParameterization,  // a >= -1 but the linear test failed
};

struct RegionLabel {
  Region tag = Region::NotCertified;
  RegionReason reason = RegionReason::None;

  bool certified() const { return tag != Region::NotCertified; }
};

RegionLabel classify(const NormParams& np);

std::string_view to_string(Region r);
std::string_view to_string(RegionReason r);

// Global-stability boundary in (c, theta) coordinates with c = -a/delta:
// theta on the curve. Zero for c <= 1 (stable for every delay).
double global_boundary_theta(double c);

// Largest delay h for which criterion_delta holds; +inf when |a| <= delta.
double global_critical_delay(double a, double delta);

// Critical delay h at which x' = -delta x + a x(t-h) loses asymptotic
// stability (purely imaginary characteristic root). Empty when |a| <= delta,
// where the equation is stable for every delay.
std::optional<double> local_critical_delay(double a, double delta);

// theta = exp(-delta h_crit) on the local boundary as a function of a/delta.
std::optional<double> local_stability_boundary(double a_over_delta);

}  // namespace ddestab
