#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ddestab/ddesim.hpp"
#include "ddestab/onedmaps.hpp"
#include "ddestab/ratmaps.hpp"

using namespace ddestab;

namespace {

// Composite Simpson rule with n (even) panels.
template <class Fn>
double simpson(Fn f, double lo, double hi, int n = 20000) {
  const double h = (hi - lo) / n;
  double s = f(lo) + f(hi);
  for (int k = 1; k < n; ++k) s += f(lo + k * h) * (k % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

std::vector<NormParams> d_samples(int n) {
  std::vector<NormParams> out;
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) {
      const double th = static_cast<double>(i) / n, mu = static_cast<double>(j) / n;
      if (in_domain_D(th, mu)) out.emplace_back(-1.0 / mu, th);
    }
  return out;
}

}  // namespace

TEST(IntervalI, EndpointsAndT1) {
  const NormParams np(-2.0, 0.5);
  const IntervalI I = interval_I(np);
  EXPECT_EQ(I.lo, -1.0);
  EXPECT_DOUBLE_EQ(I.hi, 1.0);
  EXPECT_NEAR(t1(0.5, np), -std::log(1.75), 1e-15);
  EXPECT_NEAR(t1(I.hi, np), -np.h(), 1e-12);
  EXPECT_NEAR(t1(1e-14, np), -std::log(1.0 - 1.0 / np.a()), 1e-13);
  EXPECT_THROW(t1(1.5, np), std::domain_error);
  EXPECT_THROW(t1(-1.0, np), std::domain_error);
}

TEST(PhiIntegral, AntiderivativeDerivative) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ua(-6.0, -1.2), uz(-0.8, 3.0), uu(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double a = ua(rng), z = uz(rng);
    const double rz = r_eval(z, a);
    const double u = rz + (0.0 - rz) * (0.1 + 0.8 * uu(rng));
    const double e = 1e-6;
    const double exact = 1.0 / (r_inv(u, a) - rz);
    // The stable difference form works for every rz.
    const double fd_stable = phi_integral(u - e, u + e, rz, a) / (2.0 * e);
    EXPECT_NEAR(fd_stable, exact, 1e-7 * std::max(1.0, std::abs(exact)));
    // The raw antiderivative cancels badly when 1 + rz is small.
    if (std::abs(1.0 + rz) < 0.3) continue;
    const double fd = (phi_antiderivative(u + e, rz, a) - phi_antiderivative(u - e, rz, a)) / (2.0 * e);
    EXPECT_NEAR(fd, exact, 1e-7 * std::max(1.0, std::abs(exact)));
  }
}

TEST(PhiIntegral, MatchesQuadrature) {
  for (double a : {-1.5, -3.0, -8.0})
    for (double z : {-0.6, -0.1, 0.4, 2.0}) {
      const double rz = r_eval(z, a);
      const double u1 = rz, u2 = 0.3 * rz;
      // Integrand 1/(r^{-1}(u) - rz); at u = rz it is singular, so start just inside.
      const double lo = rz + 1e-3 * (u2 - rz);
      const double q = simpson([&](double u) { return 1.0 / (r_inv(u, a) - rz); }, lo, u2);
      const double exact = phi_integral(lo, u2, rz, a);
      EXPECT_NEAR(exact, q, 1e-10 * std::max(1.0, std::abs(q))) << a << " " << z;
      EXPECT_NEAR(phi_integral(u1 + 0.0, u2, rz, a) - phi_integral(u1, lo, rz, a), exact, 1e-12);
    }
}

TEST(PhiIntegral, AgreesWithAntiderivativeDifference) {
  const double a = -2.5, rz = r_eval(0.7, a);
  const double u1 = rz, u2 = rz * 0.2;
  EXPECT_NEAR(phi_integral(u1, u2, rz, a), phi_antiderivative(u2, rz, a) - phi_antiderivative(u1, rz, a), 1e-12);
}

TEST(PhiIntegral, ZeroRzSpecialCase) {
  const double a = -2.0;
  const double expect = (a * std::log(2.0) - 2.0) - (a * std::log(1.0) - 1.0);
  EXPECT_NEAR(phi_integral(1.0, 2.0, 0.0, a), expect, 1e-14);
  const double q = simpson([&](double u) { return 1.0 / (u / (a - u)); }, 1.0, 2.0);
  EXPECT_NEAR(expect, q, 1e-10);
}

TEST(Fsolve, ZeroAndDomain) {
  const NormParams np(-2.0, 0.5);
  const MapSolve z = F_solve(0.0, np);
  EXPECT_EQ(z.status, SolveStatus::Exact);
  EXPECT_EQ(z.value, 0.0);
  EXPECT_EQ(F_solve(1.5, np).status, SolveStatus::OutsideDomain);
  EXPECT_THROW(F_solve(-1.0, np), std::domain_error);
}

TEST(Fsolve, SolvesIdentity) {
  const NormParams np(-3.0, 0.6);
  for (double z : {-0.7, -0.2, 0.1, 0.8}) {
    const MapSolve s = F_solve(z, np);
    ASSERT_TRUE(s.ok());
    const double rz = r_eval(z, np.a());
    EXPECT_NEAR(phi_integral(rz, s.value, rz, np.a()), np.theta(), 1e-12);
    // F lies between r(z) and 0.
    EXPECT_LE(std::min(rz, 0.0), s.value);
    EXPECT_LE(s.value, std::max(rz, 0.0));
  }
}

TEST(Fsolve, SlopeAtZero) {
  // F is defined where (a, theta) lies in D, which makes 0 an interior point of I.
  for (double th : {0.55, 0.59}) {
    const NormParams np(-3.0, th);
    ASSERT_TRUE(in_domain_D(th, 1.0 / 3.0));
    const double e = 1e-5;
    const double fd = (F_solve(e, np).value - F_solve(-e, np).value) / (2.0 * e);
    EXPECT_NEAR(fd, np.a() * coeffs(np).alpha, 1e-6);
  }
}

TEST(Fsolve, MatchesSimulation) {
  const NormParams np(-2.0, 0.5);
  EXPECT_NEAR(F_solve(0.3, np).value, F_sim(0.3, np), 1e-4);
  for (double z : {-0.5, 0.7}) EXPECT_NEAR(F_solve(z, np).value, F_sim(z, np), 1e-4) << z;
}

TEST(F1solve, ZeroAndLowerBound) {
  const NormParams np(-2.0, 0.5);
  EXPECT_EQ(F1_solve(0.0, np).value, 0.0);
  for (int k = 1; k <= 100; ++k) {
    const MapSolve s = F1_solve(static_cast<double>(k), np);
    ASSERT_TRUE(s.ok()) << k;
    EXPECT_GT(s.value, np.a());
  }
}

TEST(F1solve, MatchesSimulation) {
  const NormParams np(-2.0, 0.5);
  EXPECT_NEAR(F1_solve(1.0, np).value, F1_sim(1.0, np), 1e-4);
  EXPECT_NEAR(F1_solve(5.0, np).value, F1_sim(5.0, np), 1e-4);
}

TEST(Fsim, ZeroAndForcedZeroAtOrigin) {
  const NormParams np(-2.5, 0.6);
  EXPECT_EQ(F_sim(0.0, np), 0.0);
  for (double z : {-0.5, 0.2, 0.6}) {
    const SimExtremum e = F_sim_detail(z, np);
    EXPECT_NEAR(e.y_at_zero, 0.0, 1e-9) << z;
    EXPECT_TRUE(e.zero_check_passed);
  }
}

TEST(RCoordinates, ExtendedPrecisionAgrees) {
  const NormParams np(-3.0, 0.58);
  for (double r : {-1.5, -0.3, 0.2}) {
    const MapSolve s = calF(r, np);
    ASSERT_TRUE(s.ok());
    EXPECT_NEAR(to_double(calF_dd(r, np)), s.value, 1e-13);
  }
  for (double r : {-2.5, -1.2}) EXPECT_NEAR(to_double(calF1_dd(r, np)), calF1(r, np).value, 1e-13);
}

TEST(RCoordinates, AcceptsLeftEndpoint) {
  const NormParams np(-4.0 / 3.0, 0.15625);
  EXPECT_TRUE(calF(np.a_star(), np).ok());
}

TEST(ComparisonMaps, FAboveRBelowZero) {
  for (const NormParams& np : d_samples(24)) {
    const Coeffs c = coeffs(np);
    for (int k = 0; k < 16; ++k) {
      const double r = np.a_star() * (1.0 - k / 16.0);
      const MapSolve s = calF(r, np);
      ASSERT_TRUE(s.ok());
      EXPECT_GT(s.value, R_eval(r, c)) << np.a() << " " << np.theta() << " " << r;
    }
    for (int k = 1; k < 16; ++k) {
      const double r = k / (16.0 * c.beta);
      EXPECT_LT(calF(r, np).value, R_eval(r, c)) << np.a() << " " << np.theta() << " " << r;
    }
  }
}

TEST(LowerBounds, GAtQuarter) {
  const NormParams np(-2.0, 0.4);
  const double a = np.a(), th = np.theta();
  const double expect = (a * a * (1.0 - th) + th * a / 2.0) / (th * (2.0 * a - 1.0) - 4.0 * a * a);
  EXPECT_NEAR(bound_G(-0.25, np), expect, 1e-14);
}

TEST(LowerBounds, LBelowF) {
  for (const NormParams& np : d_samples(16))
    for (int k = 1; k < 20; ++k) {
      const double r = -0.25 * k / 20.0;
      EXPECT_LT(bound_L(r, np), calF(r, np).value) << np.a() << " " << np.theta() << " " << r;
    }
}

TEST(LowerBounds, G1AtUnitPMatchesG) {
  for (const NormParams& np : d_samples(8)) {
    const double r = np.a_star();
    EXPECT_NEAR(bound_G1(r, 1.0, np), bound_G(r, np), 1e-10 * std::max(1.0, std::abs(bound_G(r, np))));
  }
}

TEST(Polynomials, NPositive) {
  for (int i = 1; i < 20; ++i)
    for (double r : {-50.0, -5.0, -1.0, -0.1})
      for (double a : {-1.5, -4.0, -20.0}) EXPECT_GT(N_poly(r, NormParams(a, i / 20.0)), 0.0);
}

TEST(Polynomials, QNonPositiveAtLeftEndpointOnDStar) {
  for (int i = 1; i < 64; ++i)
    for (int j = 1; j < 64; ++j) {
      const double th = i / 64.0, mu = j / 64.0;
      if (!in_domain_Dstar(th, mu)) continue;
      const NormParams np(-1.0 / mu, th);
      EXPECT_LE(Q_poly(np.a_star(), np), 1e-12) << th << " " << mu;
    }
}

TEST(Polynomials, SIsDerivativeOfQ) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> ua(-8.0, -1.2), ut(0.1, 0.95), ur(-6.0, -0.1);
  for (int i = 0; i < 100; ++i) {
    const NormParams np(ua(rng), ut(rng));
    const double r = ur(rng);
    const double e = 1e-5;
    const double fd = (Q_poly(r + e, np) - Q_poly(r - e, np)) / (2.0 * e);
    EXPECT_NEAR(S_poly(r, np), fd, 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST(LambdaComposite, ZeroSlopeAndContraction) {
  int checked = 0;
  for (int i = 1; i < 64 && checked < 10; ++i)
    for (int j = 1; j < 64 && checked < 10; ++j) {
      const double th = i / 64.0, mu = j / 64.0;
      if (!in_domain_S(th, mu) || th <= 0.8) continue;
      const NormParams np(-1.0 / mu, th);
      ++checked;
      EXPECT_EQ(lambda_composite(0.0, np), 0.0);
      const double e = 1e-6;
      const double fd = (lambda_composite(e, np) - lambda_composite(-e, np)) / (2.0 * e);
      EXPECT_NEAR(fd, coeffs(np).gamma, 1e-6);
      for (int k = 1; k <= 100; ++k) {
        const double z = 0.5 * k;
        EXPECT_LT(lambda_composite(z, np), z);
      }
    }
  EXPECT_EQ(checked, 10);
}
