#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ddestab/nonlinearity.hpp"
#include "ddestab/params.hpp"

namespace ddestab {

// r(x) = a x / (1 + x).
double r_eval(double x, double a);
// r^{-1}(u) = u / (a - u).
double r_inv(double u, double a);

struct Coeffs {
  double a = NAN;
  double theta = NAN;
  double alpha = NAN;
  double beta = NAN;
  double gamma = NAN;  // NaN when theta <= 0.16
  double a_star = NAN;
  double lambda = NAN;
};

// alpha, beta, gamma, a*, lambda at (a, theta). gamma is filled only for
// theta > 0.16; use gamma_coeff for a checked accessor.
Coeffs coeffs(const NormParams& np);
// Throws std::domain_error for theta <= 0.16.
double gamma_coeff(const NormParams& np);

// Generic-precision versions of the coefficient formulas, used by the
// verification harness for extended-precision re-evaluation.
template <class T>
T alpha_t(T a, T theta) {
  using std::exp;
  return (T(1.0) - a) * exp(theta / a) + a;
}

template <class T>
T beta_t(T a, T theta) {
  using std::exp;
  const T l = exp(theta / a);
  const T num = a * a + l * (T(1.0) - T(2.0) * a + T(2.0) * theta * (a - T(1.0))) -
                (T(1.0) - a) * (T(1.0) - a) * l * l;
  const T den = a * a + (a - a * a) * l;
  return -num / den;
}

// R(r) = alpha r / (1 - beta r); throws at the pole.
double R_eval(double r, const Coeffs& c);
template <class T>
T R_eval_t(T r, T alpha, T beta) {
  return alpha * r / (T(1.0) - beta * r);
}

// R2(r) = k0 a r / (1 + r (1 + ln theta - theta)/(1 - theta)),
// k0 = (1 + ln theta - theta)/(2 + ln theta - theta).
double R2_eval(double r, const NormParams& np);
template <class T>
T R2_eval_t(T r, T a, T theta) {
  using std::log;
  const T e = T(1.0) + log(theta) - theta;
  const T k0 = e / (T(1.0) + e);
  return k0 * a * r / (T(1.0) + r * e / (T(1.0) - theta));
}

// psi(M) = M - theta M / (a - M) on (a, inf), an increasing bijection onto R.
double psi(double M, const NormParams& np);
double psi_inv(double y, const NormParams& np);
double psi_d1(double x, const NormParams& np);
// Exact Schwarzian of psi: -6 theta a (a^2 - 2 x a + x^2 - theta a)^{-2}.
double psi_schwarzian(double x, const NormParams& np);

// chi(x) = psi^{-1}((1 - theta) r(x)) for x > -1.
double chi(double x, const NormParams& np);
double chi_d1(double x, const NormParams& np);
// (1 - theta) a^2 / (a - theta).
double chi_slope0(const NormParams& np);
// Exact Schwarzian of chi via the composition rule.
double chi_schwarzian(double x, const NormParams& np);
// x0, chi(x0), chi^2(x0), ... (n + 1 values).
std::vector<double> chi_iterate(double x0, int n, const NormParams& np);
// Nonlinearity record for chi, with derivatives from the inverse-function rule.
Nonlinearity chi_map(const NormParams& np);

// Schwarzian from the exact derivative evaluators. Throws std::domain_error
// when |w'(x)| < tol (critical point).
double schwarzian(const Nonlinearity& f, double x, double tol = 1e-300);
// Finite-difference Schwarzian from function values only (cross-check).
double schwarzian_numeric(const Nonlinearity& f, double x);

struct SchwarzReport {
  std::vector<double> grid;
  std::vector<double> values;
  double max_value = -INFINITY;
  double argmax = NAN;
};

// Samples S f on n points uniformly in [lo, hi], skipping points within
// `guard` of f.critical_point.
SchwarzReport schwarz_report(const Nonlinearity& f, double lo, double hi, int n, double guard = 1e-6);

// J(r) = N coth(nu N / 2), N = sqrt(1 + 4 r), nu = -theta / a, for r > -1/4.
double J_eval(double r, const NormParams& np);
double J0(const NormParams& np);
double J_slope0(const NormParams& np);
double J_tangent(double r, const NormParams& np);
// Closed-form second derivative of J in r.
double J_second(double r, const NormParams& np);

// y(x) = ln(1 + x) - (x - x^2/2 + 0.4 x^3).
template <class T>
T cubic_log_gap(T x) {
  using std::log1p;
  return log1p(x) - (x - T(0.5) * x * x + T(0.4) * x * x * x);
}

}  // namespace ddestab
