#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ddestab/nonlinearity.hpp"
#include "ddestab/params.hpp"

namespace ddestab {

// w(y) = (y + ln q) e^{-y} - ln q, the Nicholson feedback shifted to the
// equilibrium and rescaled (y = gamma N - ln q, time delta t).
Nonlinearity make_ricker_shifted(double q);
// w(N) = p N e^{-gamma N}, raw Nicholson feedback.
Nonlinearity make_nicholson_raw(double p, double gamma);
// w(x) = a0 (1 - e^{-x}); (W1) needs a0 < 0.
Nonlinearity make_wright(double a0 = -1.0);
// w(x) = b / (1 + x^n) on x >= 0.
Nonlinearity make_mackey_glass(double b, double n);
// w(x) = b1 e^{-b2 x}.
Nonlinearity make_wazewska(double b1, double b2);

// Positive root of delta x = w(x), searched on (lo, hi).
double equilibrium(const Nonlinearity& w, double delta, double lo, double hi);
// v(y) = w(y + xbar) - delta xbar, so that x = xbar + y and v(0) = 0.
Nonlinearity shift_to_equilibrium(const Nonlinearity& w, double xbar, double delta = 1.0);

struct WPoint {
  double x;
  double value;
  std::string condition;  // "W1", "W2", "W3" or "bounded_below"
};

struct WReport {
  bool w1 = true;  // x w(x) < 0 for x != 0, w'(0) < 0
  bool w2 = true;  // w' changes sign at most once
  bool w3 = true;  // Sw <= 0 away from the critical point
  bool bounded_below = true;
  double lo = NAN;
  double hi = NAN;
  int points = 0;
  double max_schwarzian = -INFINITY;
  double inf_estimate = INFINITY;
  std::vector<WPoint> violations;

  bool pass() const { return w1 && w2 && w3 && bounded_below; }
};

// Checks (W1)-(W3) on n uniform points of [lo, hi]. Points within `guard` of
// the critical point are skipped for (W3); points at or below domain_lo are
// rejected with std::invalid_argument.
WReport check_W(const Nonlinearity& w, double lo, double hi, int n, double guard = 1e-6);

// a = w'(0), b = -w''(0) / (2 w'(0)); std::domain_error unless w'(0) < 0 < w''(0).
std::pair<double, double> lk_coeffs(const Nonlinearity& w);

struct NicholsonParams {
  double p;
  double delta;
  double gamma_n;
  double h;

  double q() const { return p / delta; }
  double N_star() const { return std::log(p / delta) / gamma_n; }
  double c() const { return std::log(p / delta) - 1.0; }
  double tau() const { return h * delta; }
  double theta() const { return std::exp(-h * delta); }
};

// Global stability test for the positive equilibrium; std::domain_error when p <= delta.
bool nicholson_global(const NicholsonParams& np);

struct AttractorBounds {
  double m_star = NAN;
  double x1 = NAN;
  bool pass = false;
  double g2_1 = NAN;   // g(g(1))
  double g3_1 = NAN;   // g(g(g(1)))
  double g1_2_1 = NAN; // g1(g1(1))
  bool check_i = false;   // g^2(1) > x1
  bool check_ii = false;  // theta ln q >= ln q + y1
  double y1 = NAN;
};

// Bounds for the attractor of x' = -x + q x(t-h) e^{-x(t-h)}; needs ln q > 2.
AttractorBounds attractor_bounds(double q, double theta);

struct NicholsonReport {
  double q = NAN;
  double N_star = NAN;
  double c = NAN;
  double tau = NAN;
  double theta = NAN;
  bool global = false;
  bool small_growth = false;  // ln q <= 2
  double a = NAN;             // linearization slope of the shifted map
  double b = NAN;             // rational-bound curvature
  bool has_rational_bound = false;
  RegionLabel region;
  bool has_attractor = false;
  AttractorBounds attractor;
};

NicholsonReport nicholson_report(const NicholsonParams& np);

}  // namespace ddestab
