#include "ddestab/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ddestab/ratmaps.hpp"
#include "ddestab/roots.hpp"

namespace ddestab {

Nonlinearity make_ricker_shifted(double q) {
  if (!(q > 1.0)) throw std::invalid_argument("make_ricker_shifted: q must exceed 1");
  const double L = std::log(q);
  Nonlinearity w;
  w.name = "ricker";
  w.eval = [L](double y) { return (y + L) * std::exp(-y) - L; };
  w.d1 = [L](double y) { return (1.0 - L - y) * std::exp(-y); };
  w.d2 = [L](double y) { return (y + L - 2.0) * std::exp(-y); };
  w.d3 = [L](double y) { return (3.0 - L - y) * std::exp(-y); };
  w.domain_lo = -L;
  w.critical_point = 1.0 - L;
  return w;
}

Nonlinearity make_nicholson_raw(double p, double gamma) {
  if (!(p > 0.0 && gamma > 0.0)) throw std::invalid_argument("make_nicholson_raw: p, gamma must be positive");
  Nonlinearity w;
  w.name = "nicholson";
  w.eval = [p, gamma](double N) { return p * N * std::exp(-gamma * N); };
  w.d1 = [p, gamma](double N) { return p * std::exp(-gamma * N) * (1.0 - gamma * N); };
  w.d2 = [p, gamma](double N) { return p * std::exp(-gamma * N) * (gamma * gamma * N - 2.0 * gamma); };
  w.d3 = [p, gamma](double N) { return p * std::exp(-gamma * N) * (3.0 * gamma * gamma - gamma * gamma * gamma * N); };
  w.domain_lo = 0.0;
  w.critical_point = 1.0 / gamma;
  return w;
}

Nonlinearity make_wright(double a0) {
  Nonlinearity w;
  w.name = "wright";
  w.eval = [a0](double x) { return -a0 * std::expm1(-x); };
  w.d1 = [a0](double x) { return a0 * std::exp(-x); };
  w.d2 = [a0](double x) { return -a0 * std::exp(-x); };
  w.d3 = [a0](double x) { return a0 * std::exp(-x); };
  return w;
}

Nonlinearity make_mackey_glass(double b, double n) {
  if (!(b > 0.0)) throw std::invalid_argument("make_mackey_glass: b must be positive");
  if (!(n > 1.0)) throw std::invalid_argument("make_mackey_glass: n must exceed 1");
  Nonlinearity w;
  w.name = "mackey_glass";
  w.eval = [b, n](double x) { return b / (1.0 + std::pow(x, n)); };
  w.d1 = [b, n](double x) {
    const double g = 1.0 + std::pow(x, n);
    return -b * n * std::pow(x, n - 1.0) / (g * g);
  };
  w.d2 = [b, n](double x) {
    const double g = 1.0 + std::pow(x, n);
    const double g1 = n * std::pow(x, n - 1.0);
    const double g2 = n * (n - 1.0) * std::pow(x, n - 2.0);
    return b * (2.0 * g1 * g1 / (g * g * g) - g2 / (g * g));
  };
  w.d3 = [b, n](double x) {
    const double g = 1.0 + std::pow(x, n);
    const double g1 = n * std::pow(x, n - 1.0);
    const double g2 = n * (n - 1.0) * std::pow(x, n - 2.0);
    const double g3 = n * (n - 1.0) * (n - 2.0) * std::pow(x, n - 3.0);
    return b * (-6.0 * g1 * g1 * g1 / (g * g * g * g) + 6.0 * g1 * g2 / (g * g * g) - g3 / (g * g));
  };
  w.domain_lo = 0.0;
  return w;
}

Nonlinearity make_wazewska(double b1, double b2) {
  if (!(b1 > 0.0 && b2 > 0.0)) throw std::invalid_argument("make_wazewska: b1, b2 must be positive");
  Nonlinearity w;
  w.name = "wazewska";
  w.eval = [b1, b2](double x) { return b1 * std::exp(-b2 * x); };
  w.d1 = [b1, b2](double x) { return -b2 * b1 * std::exp(-b2 * x); };
  w.d2 = [b1, b2](double x) { return b2 * b2 * b1 * std::exp(-b2 * x); };
  w.d3 = [b1, b2](double x) { return -b2 * b2 * b2 * b1 * std::exp(-b2 * x); };
  return w;
}

double equilibrium(const Nonlinearity& w, double delta, double lo, double hi) {
  auto f = [&](double x) { return w.eval(x) - delta * x; };
  const RootResult rr = bracketed_root(f, lo, hi);
  if (!rr.bracketed) throw std::domain_error("equilibrium: no sign change of w(x) - delta x on the bracket");
  return rr.x;
}

Nonlinearity shift_to_equilibrium(const Nonlinearity& w, double xbar, double delta) {
  Nonlinearity v;
  v.name = w.name + "_shifted";
  const double c = delta * xbar;
  v.eval = [w, xbar, c](double y) { return w.eval(y + xbar) - c; };
  v.d1 = [w, xbar](double y) { return w.d1(y + xbar); };
  v.d2 = [w, xbar](double y) { return w.d2(y + xbar); };
  v.d3 = [w, xbar](double y) { return w.d3(y + xbar); };
  v.domain_lo = w.domain_lo - xbar;
  v.domain_hi = w.domain_hi - xbar;
  if (w.critical_point) v.critical_point = *w.critical_point - xbar;
  return v;
}

WReport check_W(const Nonlinearity& w, double lo, double hi, int n, double guard) {
  if (!(hi > lo) || n < 2) throw std::invalid_argument("check_W: need hi > lo and n >= 2");
  if (!(lo > w.domain_lo)) throw std::invalid_argument("check_W: grid reaches below the model domain");
  WReport rep;
  rep.lo = lo;
  rep.hi = hi;
  rep.points = n;

  const double d0 = w.d1(0.0);
  if (!(d0 < 0.0)) {
    rep.w1 = false;
    rep.violations.push_back({0.0, d0, "W1"});
  }

  int sign_changes = 0;
  int last_sign = 0;
  for (int i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * i / (n - 1);
    const double v = w.eval(x);
    rep.inf_estimate = std::min(rep.inf_estimate, v);
    if (x != 0.0 && !(x * v < 0.0)) {
      rep.w1 = false;
      rep.violations.push_back({x, v, "W1"});
    }
    const double d = w.d1(x);
    const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (s != 0) {
      if (last_sign != 0 && s != last_sign) ++sign_changes;
      last_sign = s;
    }
    if (sign_changes > 1) {
      rep.w2 = false;
      rep.violations.push_back({x, d, "W2"});
      sign_changes = 1;  // report each further change once
    }
    if (w.critical_point && std::abs(x - *w.critical_point) < guard) continue;
    if (d == 0.0) continue;
    const double sw = schwarzian(w, x);
    if (sw > rep.max_schwarzian) rep.max_schwarzian = sw;
    if (!(sw <= 0.0)) {
      rep.w3 = false;
      rep.violations.push_back({x, sw, "W3"});
    }
  }

  // Probe far to the right for the lower bound.
  for (double scale : {10.0, 100.0}) {
    const double x = hi + scale * std::max(1.0, hi - lo);
    const double v = w.eval(x);
    if (!std::isfinite(v)) {
      rep.bounded_below = false;
      rep.violations.push_back({x, v, "bounded_below"});
    } else {
      rep.inf_estimate = std::min(rep.inf_estimate, v);
    }
  }
  if (!std::isfinite(rep.inf_estimate)) rep.bounded_below = false;
  return rep;
}

std::pair<double, double> lk_coeffs(const Nonlinearity& w) {
  const double w1 = w.d1(0.0);
  const double w2 = w.d2(0.0);
  if (!(w1 < 0.0)) throw std::domain_error("lk_coeffs: requires w'(0) < 0");
  if (!(w2 > 0.0)) throw std::domain_error("lk_coeffs: requires w''(0) > 0");
  return {w1, -w2 / (2.0 * w1)};
}

bool nicholson_global(const NicholsonParams& np) {
  if (!(np.p > np.delta)) throw std::domain_error("nicholson_global: p <= delta, only the trivial equilibrium");
  const double L = std::log(np.q());
  if (L <= 2.0) return true;
  const double c = L - 1.0;
  return np.theta() > global_boundary_theta(c);
}

AttractorBounds attractor_bounds(double q, double theta) {
  const double L = std::log(q);
  if (!(L > 2.0)) throw std::domain_error("attractor_bounds: requires ln q > 2");
  if (!(theta > 0.0 && theta < 1.0)) throw std::domain_error("attractor_bounds: theta must lie in (0,1)");
  auto g = [q](double x) { return q * x * std::exp(-x); };
  auto g1 = [&](double x) { return theta * L + (1.0 - theta) * g(x); };

  AttractorBounds out;
  const RootResult rr = bracketed_root([&](double x) { return g(x) - L; }, 0.0, 1.0);
  if (!rr.bracketed) throw std::runtime_error("attractor_bounds: failed to bracket x1");
  out.x1 = rr.x;
  out.g2_1 = g(g(1.0));
  out.g3_1 = g(out.g2_1);
  out.g1_2_1 = g1(g1(1.0));
  out.m_star = std::max(out.g2_1, out.g1_2_1);
  out.pass = out.m_star > out.x1;
  out.check_i = out.g2_1 > out.x1;
  out.y1 = (2.0 - L - std::sqrt(L * L + 4.0 * L - 4.0)) / 2.0;
  out.check_ii = theta * L >= L + out.y1;
  return out;
}

NicholsonReport nicholson_report(const NicholsonParams& np) {
  if (!(np.p > 0.0 && np.delta > 0.0 && np.gamma_n > 0.0 && np.h > 0.0))
    throw std::invalid_argument("nicholson: p, delta, gamma, h must be positive");
  NicholsonReport rep;
  rep.q = np.q();
  rep.c = np.c();
  rep.tau = np.tau();
  rep.theta = np.theta();
  rep.N_star = np.N_star();
  rep.global = nicholson_global(np);
  const double L = std::log(rep.q);
  rep.small_growth = L <= 2.0;
  rep.a = 1.0 - L;
  if (L > 2.0) {
    const auto [a, b] = lk_coeffs(make_ricker_shifted(rep.q));
    rep.a = a;
    rep.b = b;
    rep.has_rational_bound = true;
    rep.region = classify(NormParams(a, rep.theta, 1.0 / b));
    rep.attractor = attractor_bounds(rep.q, rep.theta);
    rep.has_attractor = true;
  } else {
    rep.region = {Region::NotCertified, RegionReason::OutsideMuParameterization};
  }
  return rep;
}

}  // namespace ddestab
