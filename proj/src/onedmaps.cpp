#include "ddestab/onedmaps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ddestab/roots.hpp"

namespace ddestab {

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Ok:
      return "ok";
    case SolveStatus::Exact:
      return "exact";
    case SolveStatus::BracketFailure:
      return "bracket_failure";
    case SolveStatus::OutsideDomain:
      return "outside_domain";
  }
  return "?";
}

IntervalI interval_I(const NormParams& np) {
  const double theta = np.theta();
  return {-1.0, np.a() * (theta - 1.0) / theta - 1.0};
}

double t1(double z, const NormParams& np) {
  const IntervalI I = interval_I(np);
  if (!(z > I.lo && z <= I.hi)) throw std::domain_error("t1: z outside I");
  if (z == 0.0) return -std::log1p(-1.0 / np.a());
  return -std::log1p(-(1.0 + z) / np.a());
}

double phi_antiderivative(double u, double rz, double a) {
  const double c = 1.0 + rz;
  if (c == 0.0) throw std::domain_error("phi_antiderivative: rz = -1");
  const double s = u * c - rz * a;
  if (s == 0.0) throw std::domain_error("phi_antiderivative: singular argument");
  return (a * std::log(std::abs(s)) - s) / (c * c);
}

namespace {

// Solves phi_integral(lower, x, rz, a) = target for x between `lower` and
// `far`, where the integrand keeps one sign. `far` must overshoot the root.
MapSolve solve_identity(double lower, double far, double target, double rz, double a) {
  MapSolve out;
  auto g = [&](double x) { return phi_integral(lower, x, rz, a) - target; };
  const double g_far = g(far);
  out.lo = std::min(lower, far);
  out.hi = std::max(lower, far);
  if (!(std::abs(g_far) >= 0.0) || g_far < 0.0) {
    out.status = SolveStatus::BracketFailure;
    out.residual = g_far;
    return out;
  }
  const RootResult rr = bracketed_root(g, lower, far);
  out.value = rr.x;
  out.residual = rr.fx;
  out.iterations = rr.iterations;
  out.status = rr.bracketed ? SolveStatus::Ok : SolveStatus::BracketFailure;
  return out;
}

MapSolve exact_zero() {
  MapSolve out;
  out.value = 0.0;
  out.residual = 0.0;
  out.lo = out.hi = 0.0;
  out.status = SolveStatus::Exact;
  return out;
}

}  // namespace

MapSolve F_solve(double z, const NormParams& np) {
  const IntervalI I = interval_I(np);
  if (!(z > I.lo)) throw std::domain_error("F_solve: z must exceed -1");
  if (z == 0.0) return exact_zero();
  if (z > I.hi) {
    MapSolve out;
    out.status = SolveStatus::OutsideDomain;
    return out;
  }
  const double a = np.a();
  const double rz = r_eval(z, a);
  // z > 0: F in [r(z), 0] and the integral grows from r(z) upward.
  // z < 0: F in [0, r(z)]; integrating downward from r(z) the value also grows.
  return solve_identity(rz, 0.0, np.theta(), rz, a);
}

double r1_of_r(double r, const NormParams& np) {
  const double tm = np.theta() - 1.0;
  return np.a() * r * tm / (np.theta() + r * tm);
}

MapSolve F1_solve(double z, const NormParams& np) {
  if (!(z >= 0.0)) throw std::domain_error("F1_solve: z must be nonnegative");
  if (z == 0.0) return exact_zero();
  const double a = np.a();
  const double rz = r_eval(z, a);
  const double r1 = r1_of_r(rz, np);
  return solve_identity(r1, 0.0, r1 * np.theta() / rz, rz, a);
}

MapSolve calF(double r, const NormParams& np) {
  if (r == 0.0) return exact_zero();
  double z = r_inv(r, np.a());
  // r = a* maps to the right end of I; keep rounding from pushing it outside.
  if (r >= np.a_star() && r < 0.0) z = std::min(z, interval_I(np).hi);
  return F_solve(z, np);
}

MapSolve calF1(double r, const NormParams& np) {
  if (r == 0.0) return exact_zero();
  return F1_solve(r_inv(r, np.a()), np);
}

DD calF_dd(double r, const NormParams& np) {
  const MapSolve s = calF(r, np);
  if (s.status == SolveStatus::Exact) return DD(0.0);
  if (!s.ok()) return DD(NAN);
  const DD a(np.a());
  const DD rr(r);
  return refine_identity_root(rr, DD(np.theta()), rr, a, DD(s.value));
}

DD calF1_dd(double r, const NormParams& np) {
  const MapSolve s = calF1(r, np);
  if (s.status == SolveStatus::Exact) return DD(0.0);
  if (!s.ok()) return DD(NAN);
  const DD a(np.a());
  const DD th(np.theta());
  const DD rr(r);
  const DD tm = th - DD(1.0);
  const DD r1 = a * rr * tm / (th + rr * tm);
  return refine_identity_root(r1, r1 * th / rr, rr, a, DD(s.value));
}

double bound_L(double r, const NormParams& np) {
  if (!(r > -0.25 && r < 0.0)) throw std::domain_error("bound_L: r must lie in (-1/4, 0)");
  const double a = np.a();
  const double l = np.lambda();
  const double jp = J_slope0(np);
  const double num = r * (l + a * (1.0 - l)) + 0.5 * jp * (1.0 - l) * r * r;
  const double den = 1.0 + ((1.0 - l) / a + 0.5 * jp * (1.0 - l)) * r;
  if (den == 0.0) throw std::domain_error("bound_L: pole");
  return num / den;
}

double bound_G(double r, const NormParams& np) {
  const double a = np.a();
  const double th = np.theta();
  const double th3 = th * th * th;
  const double w = -r - 0.25;
  const double num = a * a * (1.0 - th) + th * a / 2.0 + th3 * w * (1.0 / (2.0 * a) - 1.0) / 3.0;
  const double den = a * a - th * (r + a / 2.0) - th3 * w * (a / 2.0 + r) / (3.0 * a * a);
  if (den == 0.0) throw std::domain_error("bound_G: pole");
  return r * num / den;
}

G1Coeffs g1_coeffs(double P, const NormParams& np) {
  const double a = np.a();
  const double th = np.theta();
  const double th3 = th * th * th;
  const double a3 = a * a * a;
  const double a4 = a3 * a;
  const double P2 = P * P;
  const double P3 = P2 * P;
  const double P4 = P3 * P;
  G1Coeffs c;
  c.A1 = (1.0 - th) * P + th / (2.0 * a) * P2 + th3 / (24.0 * a3) * (2.0 * a - P) * P3;
  c.A2 = th3 / (6.0 * a3) * (2.0 * a - P) * P3;
  c.B0 = 1.0 - th * P / (2.0 * a) + th3 * P3 / (24.0 * a3);
  c.B1 = -th * P2 / (a * a) + th3 * P3 / (6.0 * a3) + th3 * P4 / (12.0 * a4);
  c.B2 = th3 * P4 / (3.0 * a4);
  return c;
}

double bound_G1(double r, double P, const NormParams& np) {
  const G1Coeffs c = g1_coeffs(P, np);
  const double den = c.B0 + c.B1 * r + c.B2 * r * r;
  if (den == 0.0) throw std::domain_error("bound_G1: pole");
  return (c.A1 * r + c.A2 * r * r) / den;
}

double P_of_r(double r, const NormParams& np) {
  const double tm = np.theta() - 1.0;
  return np.a() * tm / (np.theta() + r * tm);
}

double M_poly(double r, const NormParams& np) { return M_poly_t(r, np.a(), np.theta()); }
double N_poly(double r, const NormParams& np) { return N_poly_t(r, np.theta()); }

double Q_poly(double r, const NormParams& np) {
  const Coeffs c = coeffs(np);
  return Q_poly_t(r, np.a(), np.theta(), c.alpha, c.beta);
}

double S_poly(double r, const NormParams& np) {
  const Coeffs c = coeffs(np);
  return S_poly_t(r, np.a(), np.theta(), c.alpha, c.beta);
}

std::array<double, 4> T_chain(const NormParams& np) {
  const double a = np.a();
  const double th = np.theta();
  const double al = alpha_t(a, th);
  const double tm2 = (th - 1.0) * (th - 1.0);
  const double th2 = th * th;
  const double th3 = th2 * th;
  const double T3 = th * al;
  const double T2 = (-6.0 * a * tm2 + 3.0 * th * (3.0 * th - 11.0) * al) / (2.0 * th2 - 15.0);
  const double T1 = (2.0 * a * tm2 * (2.0 * th2 - 15.0) - 6.0 * th * (th3 - 2.0 * th2 - 6.0 * th + 19.0) * al) /
                    (3.0 * th2 + th - 24.0);
  const double T0 =
      (2.0 * a * tm2 * (3.0 * th2 + th - 24.0) - th * (7.0 * th3 - 17.0 * th2 - 47.0 * th + 153.0) * al) /
      (th2 - 13.0);
  return {T0, T1, T2, T3};
}

double lambda_composite(double M, const NormParams& np) {
  const double a = np.a();
  const Coeffs c = coeffs(np);
  auto stage = [](int k, auto&& fn) {
    try {
      return fn();
    } catch (const std::domain_error& e) {
      throw std::domain_error("lambda_composite: pole at stage " + std::to_string(k) + " (" + e.what() + ")");
    }
  };
  const double s1 = stage(1, [&] { return r_eval(M, a); });
  const double s2 = stage(2, [&] { return R2_eval(s1, np); });
  const double s3 = stage(3, [&] { return r_eval(s2, a); });
  return stage(4, [&] { return R_eval(s3, c); });
}

}  // namespace ddestab
