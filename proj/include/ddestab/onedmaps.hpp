#pragma once

#include <array>
#include <cmath>
#include <string_view>

#include "ddestab/ddouble.hpp"
#include "ddestab/params.hpp"
#include "ddestab/ratmaps.hpp"

namespace ddestab {

enum class SolveStatus {
  Ok,
  Exact,           // z = 0 or r = 0, returned without solving
  BracketFailure,  // identity has no root on the sign-contract bracket
  OutsideDomain,   // argument outside the interval where the map is defined
};

std::string_view to_string(SolveStatus s);

struct MapSolve {
  double value = NAN;
  double residual = NAN;
  double lo = NAN;
  double hi = NAN;
  int iterations = 0;
  SolveStatus status = SolveStatus::Ok;

  bool ok() const { return status == SolveStatus::Ok || status == SolveStatus::Exact; }
};

// I = (-1, a(theta - 1)/theta - 1).
struct IntervalI {
  double lo = -1.0;
  double hi = NAN;
};

IntervalI interval_I(const NormParams& np);

// t1(z) = -ln(1 - (1 + z)/a), in [-h, 0] for z in I.
double t1(double z, const NormParams& np);

// Antiderivative of 1/(r^{-1}(u) - rz) = (a - u)/s(u), s(u) = u(1 + rz) - rz a:
// Phi(u) = [a ln|s| - s] / (1 + rz)^2. Requires rz != -1.
double phi_antiderivative(double u, double rz, double a);

// g(d) = (log1p(d) - d) / d^2, with the series near zero.
template <class T>
T log1p_remainder(T d) {
  using std::abs;
  using std::log1p;
  if (abs(d) < T(0.05)) {
    // -1/2 + d/3 - d^2/4 + ...
    T sum(0.0);
    T p(1.0);
    for (int k = 0; k < 24; ++k) {
      const T c = T((k % 2 == 0 ? -1.0 : 1.0) / (k + 2));
      sum += c * p;
      p *= d;
    }
    return sum;
  }
  return (log1p(d) - d) / (d * d);
}

// Phi(u2) - Phi(u1) written so that it stays accurate for u2 close to u1 and
// at rz = -1. Requires s(u1), s(u2) of the same sign.
template <class T>
T phi_integral(T u1, T u2, T rz, T a) {
  const T c = T(1.0) + rz;
  const T s1 = u1 * c - rz * a;
  const T du = u2 - u1;
  const T d = c * du / s1;
  return du / s1 * ((a - u1) + a * du / s1 * log1p_remainder(d));
}

// Polishes a root of phi_integral(lower, x, rz, a) = target with Newton steps
// in precision T, starting from x0 (typically the double solution).
template <class T>
T refine_identity_root(T lower, T target, T rz, T a, T x0, int steps = 3) {
  T x = x0;
  for (int i = 0; i < steps; ++i) {
    const T s = x * (T(1.0) + rz) - rz * a;
    const T g = phi_integral(lower, x, rz, a) - target;
    x = x - g * s / (a - x);
  }
  return x;
}

// F(z) from theta = int_{r(z)}^{F} du / (r^{-1}(u) - r(z)), z in I.
MapSolve F_solve(double z, const NormParams& np);
// r1(r) = a r (theta - 1) / (theta + r (theta - 1)).
double r1_of_r(double r, const NormParams& np);
// F1(z) from r1 theta / r(z) = int_{r1}^{F1} du / (r^{-1}(u) - r(z)), z >= 0.
MapSolve F1_solve(double z, const NormParams& np);

// The maps in r-coordinates: calF(r) = F(r / (a - r)), calF1(r) = F1(r / (a - r)).
MapSolve calF(double r, const NormParams& np);
MapSolve calF1(double r, const NormParams& np);

// Extended-precision values of calF / calF1 at r, polished from the double solve.
DD calF_dd(double r, const NormParams& np);
DD calF1_dd(double r, const NormParams& np);

// Lower bound L(r) for calF on r in (-1/4, 0), built from the tangent of J.
double bound_L(double r, const NormParams& np);
// Lower bound G(r) for calF on r < -1/4 (tan x <= x + x^3/3 expansion).
double bound_G(double r, const NormParams& np);
// Lower bound G1(r, P) for calF1 with the A_i / B_i family.
double bound_G1(double r, double P, const NormParams& np);
// P(r) = a (theta - 1) / (theta + r (theta - 1)).
double P_of_r(double r, const NormParams& np);

struct G1Coeffs {
  double A1, A2, B0, B1, B2;
};
G1Coeffs g1_coeffs(double P, const NormParams& np);

// M, N polynomials with calG1(r) = r M / N; Q = (1 - r beta) M - alpha N and
// S = dQ/dr.
template <class T>
T M_poly_t(T r, T a, T th) {
  const T tm = th - T(1.0);
  const T th2 = th * th;
  const T th3 = th2 * th;
  const T inner = T(13.0) * th3 - th3 * th2 - T(2.0) * th2 * tm * (th + T(3.0)) * (T(3.0) * th - T(8.0)) * r -
                  T(4.0) * th * (T(2.0) * th2 - T(15.0)) * tm * tm * r * r + T(24.0) * tm * tm * tm * r * r * r;
  return -(tm * tm) * a * inner;
}

template <class T>
T N_poly_t(T r, T th) {
  const T tm = th - T(1.0);
  const T th2 = th * th;
  const T th3 = th2 * th;
  const T th4 = th2 * th2;
  const T n0 = T(35.0) * th4 - T(9.0) * th4 * th + th4 * th3 - T(3.0) * th4 * th2;
  const T n1 = th3 * tm * (T(7.0) * th3 - T(17.0) * th2 - T(47.0) * th + T(153.0));
  const T n2 = T(12.0) * th2 * (th3 - T(2.0) * th2 - T(6.0) * th + T(19.0)) * tm * tm;
  const T n3 = -T(12.0) * th * (T(3.0) * th - T(11.0)) * tm * tm * tm;
  const T n4 = T(24.0) * tm * tm * tm * tm;
  return (((n4 * r + n3) * r + n2) * r + n1) * r + n0;
}

template <class T>
T Q_poly_t(T r, T a, T th, T alpha, T beta) {
  return (T(1.0) - r * beta) * M_poly_t(r, a, th) - alpha * N_poly_t(r, th);
}

template <class T>
T S_poly_t(T r, T a, T th, T alpha, T beta) {
  const T tm = th - T(1.0);
  const T tm2 = tm * tm;
  const T tm3 = tm2 * tm;
  const T tm4 = tm2 * tm2;
  const T th2 = th * th;
  const T th3 = th2 * th;
  const T s3 = T(96.0) * tm4 * (beta * a * tm - alpha);
  const T s2 = -T(12.0) * tm4 * a * th * (T(2.0) * th2 - T(15.0)) * beta +
               T(36.0) * th * tm3 * (T(3.0) * th - T(11.0)) * alpha - T(72.0) * tm4 * tm * a;
  const T s1 = -T(4.0) * a * th2 * tm3 * (th + T(3.0)) * (T(3.0) * th - T(8.0)) * beta -
               T(24.0) * th2 * tm2 * (th3 - T(2.0) * th2 - T(6.0) * th + T(19.0)) * alpha +
               T(8.0) * a * th * tm4 * (T(2.0) * th2 - T(15.0));
  const T s0 = a * tm2 * th3 * (T(13.0) - th2) * beta -
               th3 * tm * (T(7.0) * th3 - T(17.0) * th2 - T(47.0) * th + T(153.0)) * alpha +
               T(2.0) * a * th2 * tm3 * (th + T(3.0)) * (T(3.0) * th - T(8.0));
  return ((s3 * r + s2) * r + s1) * r + s0;
}

double M_poly(double r, const NormParams& np);
double N_poly(double r, const NormParams& np);
double Q_poly(double r, const NormParams& np);
double S_poly(double r, const NormParams& np);

// Comparison values T0..T3 against a theta (theta - 1) beta.
std::array<double, 4> T_chain(const NormParams& np);

// lambda = R o r o R2 o r; throws std::domain_error naming the stage at a pole.
double lambda_composite(double M, const NormParams& np);

}  // namespace ddestab
