#include "ddestab/ratmaps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ddestab {

double r_eval(double x, double a) {
  if (x == -1.0) throw std::domain_error("r_eval: pole at x = -1");
  return a * x / (1.0 + x);
}

double r_inv(double u, double a) {
  if (u == a) throw std::domain_error("r_inv: pole at u = a");
  return u / (a - u);
}

Coeffs coeffs(const NormParams& np) {
  Coeffs c;
  c.a = np.a();
  c.theta = np.theta();
  c.lambda = np.lambda();
  c.a_star = np.a_star();
  c.alpha = alpha_t(c.a, c.theta);
  c.beta = beta_t(c.a, c.theta);
  if (c.theta > 0.16) c.gamma = gamma_coeff(np);
  return c;
}

double gamma_coeff(const NormParams& np) {
  const double theta = np.theta();
  if (!(theta > 0.16)) throw std::domain_error("gamma: defined only for theta > 0.16");
  const double a = np.a();
  const double lt = std::log(theta);
  return a * a * a * alpha_t(a, theta) * (1.0 - theta + lt) / (2.0 - theta + lt);
}

double R_eval(double r, const Coeffs& c) {
  const double den = 1.0 - c.beta * r;
  if (den == 0.0) throw std::domain_error("R_eval: pole at r = 1/beta");
  return c.alpha * r / den;
}

double R2_eval(double r, const NormParams& np) {
  const double theta = np.theta();
  const double e = 1.0 + std::log(theta) - theta;
  const double den = 1.0 + r * e / (1.0 - theta);
  if (den == 0.0) throw std::domain_error("R2_eval: pole");
  return e / (1.0 + e) * np.a() * r / den;
}

double psi(double M, const NormParams& np) {
  const double a = np.a();
  if (!(M > a)) throw std::domain_error("psi: argument must exceed a");
  return M - np.theta() * M / (a - M);
}

double psi_inv(double y, const NormParams& np) {
  const double a = np.a();
  // x^2 - (a - theta + y) x + y a = 0; the larger root is the one above a.
  const double B = a - np.theta() + y;
  const double disc = std::max(0.0, B * B - 4.0 * y * a);
  const double s = std::sqrt(disc);
  const double x = B >= 0.0 ? 0.5 * (B + s) : (B - s == 0.0 ? 0.5 * B : 2.0 * y * a / (B - s));
  if (!(x > a)) throw std::logic_error("psi_inv: root selection failed for y = " + std::to_string(y));
  return x;
}

double psi_d1(double x, const NormParams& np) {
  const double d = np.a() - x;
  return 1.0 - np.theta() * np.a() / (d * d);
}

double psi_schwarzian(double x, const NormParams& np) {
  const double a = np.a();
  const double theta = np.theta();
  const double q = a * a - 2.0 * x * a + x * x - theta * a;
  return -6.0 * theta * a / (q * q);
}

double chi(double x, const NormParams& np) {
  if (!(x > -1.0)) throw std::domain_error("chi: argument must exceed -1");
  return psi_inv((1.0 - np.theta()) * r_eval(x, np.a()), np);
}

double chi_d1(double x, const NormParams& np) {
  const double g1 = (1.0 - np.theta()) * np.a() / ((1.0 + x) * (1.0 + x));
  return g1 / psi_d1(chi(x, np), np);
}

double chi_slope0(const NormParams& np) {
  const double a = np.a();
  return (1.0 - np.theta()) * a * a / (a - np.theta());
}

double chi_schwarzian(double x, const NormParams& np) {
  const double g1 = (1.0 - np.theta()) * np.a() / ((1.0 + x) * (1.0 + x));
  const double c = chi(x, np);
  const double p1 = psi_d1(c, np);
  return -g1 * g1 * psi_schwarzian(c, np) / (p1 * p1);
}

std::vector<double> chi_iterate(double x0, int n, const NormParams& np) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  out.push_back(x0);
  double x = x0;
  for (int i = 0; i < n; ++i) {
    x = chi(x, np);
    out.push_back(x);
  }
  return out;
}

Nonlinearity chi_map(const NormParams& np) {
  const double a = np.a();
  const double theta = np.theta();
  Nonlinearity inv;
  inv.name = "psi_inv";
  inv.eval = [np](double y) { return psi_inv(y, np); };
  inv.d1 = [np](double y) { return 1.0 / psi_d1(psi_inv(y, np), np); };
  inv.d2 = [np, a, theta](double y) {
    const double x = psi_inv(y, np);
    const double d = a - x;
    const double p1 = psi_d1(x, np);
    const double p2 = -2.0 * theta * a / (d * d * d);
    return -p2 / (p1 * p1 * p1);
  };
  inv.d3 = [np, a, theta](double y) {
    const double x = psi_inv(y, np);
    const double d = a - x;
    const double p1 = psi_d1(x, np);
    const double p2 = -2.0 * theta * a / (d * d * d);
    const double p3 = -6.0 * theta * a / (d * d * d * d);
    return (3.0 * p2 * p2 - p1 * p3) / std::pow(p1, 5);
  };
  Nonlinearity out = compose(inv, make_rational((1.0 - theta) * a, 1.0));
  out.name = "chi";
  out.domain_lo = -1.0;
  return out;
}

double schwarzian(const Nonlinearity& f, double x, double tol) {
  const double d1 = f.d1(x);
  if (!(std::abs(d1) >= tol)) throw std::domain_error("schwarzian: critical point at x = " + std::to_string(x));
  const double q = f.d2(x) / d1;
  return f.d3(x) / d1 - 1.5 * q * q;
}

namespace {

double schwarzian_stencil(const Nonlinearity& f, double x, double h) {
  double v[7];
  for (int k = -3; k <= 3; ++k) v[k + 3] = f.eval(x + k * h);
  const double d1 = (-v[0] + 9.0 * v[1] - 45.0 * v[2] + 45.0 * v[4] - 9.0 * v[5] + v[6]) / (60.0 * h);
  const double d2 =
      (2.0 * v[0] - 27.0 * v[1] + 270.0 * v[2] - 490.0 * v[3] + 270.0 * v[4] - 27.0 * v[5] + 2.0 * v[6]) /
      (180.0 * h * h);
  const double d3 = (-v[6] + 8.0 * v[5] - 13.0 * v[4] + 13.0 * v[2] - 8.0 * v[1] + v[0]) / (8.0 * h * h * h);
  const double q = d2 / d1;
  return d3 / d1 - 1.5 * q * q;
}

}  // namespace

double schwarzian_numeric(const Nonlinearity& f, double x) {
  double h = 4e-3 * std::max(1.0, std::abs(x));
  // Derivatives scale with the distance to a pole at the domain edge.
  if (std::isfinite(f.domain_lo)) h = std::min(h, (x - f.domain_lo) / 50.0);
  if (std::isfinite(f.domain_hi)) h = std::min(h, (f.domain_hi - x) / 50.0);
  if (!(h > 0.0)) throw std::domain_error("schwarzian_numeric: x outside domain");
  // One Richardson step on the O(h^4) stencil error.
  const double coarse = schwarzian_stencil(f, x, h);
  const double fine = schwarzian_stencil(f, x, 0.5 * h);
  return (16.0 * fine - coarse) / 15.0;
}

SchwarzReport schwarz_report(const Nonlinearity& f, double lo, double hi, int n, double guard) {
  SchwarzReport rep;
  if (n < 2) throw std::invalid_argument("schwarz_report: need at least 2 points");
  rep.grid.reserve(n);
  rep.values.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * i / (n - 1);
    if (f.critical_point && std::abs(x - *f.critical_point) < guard) continue;
    const double s = schwarzian(f, x);
    rep.grid.push_back(x);
    rep.values.push_back(s);
    if (s > rep.max_value || std::isnan(s)) {
      rep.max_value = s;
      rep.argmax = x;
      if (std::isnan(s)) break;
    }
  }
  return rep;
}

double J_eval(double r, const NormParams& np) {
  if (!(1.0 + 4.0 * r > 0.0)) throw std::domain_error("J_eval: requires r > -1/4");
  const double nu = -np.theta() / np.a();
  const double N = std::sqrt(1.0 + 4.0 * r);
  return N / std::tanh(0.5 * nu * N);
}

double J0(const NormParams& np) {
  const double l = np.lambda();
  return (1.0 + l) / (1.0 - l);
}

double J_slope0(const NormParams& np) {
  const double l = np.lambda();
  const double a = np.a();
  return 2.0 * (1.0 + l) / (1.0 - l) + 4.0 * np.theta() * l / (a * (1.0 - l) * (1.0 - l));
}

double J_tangent(double r, const NormParams& np) { return J0(np) + J_slope0(np) * r; }

namespace {

// E(x) / (e^x - 1)^3 with
// E(x) = -e^{3x} + e^{2x}(2x^2 - 2x + 1) + e^x(2x^2 + 2x + 1) - 1.
double J_second_kernel(double x) {
  if (x < 2.0) {
    // Taylor coefficients of E vanish through x^5; sum from x^6.
    double e_sum = 0.0;
    double inv_fact = 1.0 / 720.0;  // 1/n!
    double xn = std::pow(x, 6);
    for (int n = 6; n < 60; ++n) {
      const double p3 = std::pow(3.0, n);
      const double p2 = std::pow(2.0, n);
      const double c = (-p3 + p2 + 1.0) * inv_fact + (-p2 + 2.0) * inv_fact * n +
                       (0.5 * p2 + 2.0) * inv_fact * n * (n - 1);
      const double term = c * xn;
      e_sum += term;
      if (n > 12 && std::abs(term) < 1e-18 * std::abs(e_sum)) break;
      inv_fact /= (n + 1);
      xn *= x;
    }
    const double em1 = std::expm1(x);
    return e_sum / (em1 * em1 * em1);
  }
  const double u = std::exp(-x);
  const double num = -1.0 + u * (2.0 * x * x - 2.0 * x + 1.0) + u * u * (2.0 * x * x + 2.0 * x + 1.0) - u * u * u;
  const double d = -std::expm1(-x);
  return num / (d * d * d);
}

}  // namespace

double J_second(double r, const NormParams& np) {
  if (!(1.0 + 4.0 * r > 0.0)) throw std::domain_error("J_second: requires r > -1/4");
  const double nu = -np.theta() / np.a();
  const double N = std::sqrt(1.0 + 4.0 * r);
  return 4.0 * J_second_kernel(nu * N) / (N * N * N);
}

}  // namespace ddestab
