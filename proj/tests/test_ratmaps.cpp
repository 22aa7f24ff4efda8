#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ddestab/ddouble.hpp"
#include "ddestab/models.hpp"
#include "ddestab/nonlinearity.hpp"
#include "ddestab/ratmaps.hpp"

using namespace ddestab;

namespace {

double central_diff(const std::function<double(double)>& f, double x, double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Independent transcription of beta for cross-checking the coefficient code.
double beta_ref(double a, double th) {
  const double l = std::exp(th / a);
  const double num = a * a + l * (1.0 - 2.0 * a + 2.0 * th * (a - 1.0)) - (1.0 - a) * (1.0 - a) * l * l;
  return -num / (a * a + (a - a * a) * l);
}

}  // namespace

TEST(Rational, Values) {
  EXPECT_EQ(r_eval(0.0, -2.0), 0.0);
  EXPECT_DOUBLE_EQ(r_eval(1.0, -2.0), -1.0);
  EXPECT_NEAR(r_eval(1e12, -2.0), -2.0, 1e-11);
  EXPECT_EQ(r_inv(0.0, -2.0), 0.0);
  EXPECT_DOUBLE_EQ(r_inv(-1.0, -2.0), 1.0);
}

TEST(Rational, RoundTrip) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(-0.99, 10.0), ua(-20.0, -1.01);
  for (int i = 0; i < 1000; ++i) {
    const double x = ux(rng), a = ua(rng);
    EXPECT_NEAR(r_inv(r_eval(x, a), a), x, 1e-14 * std::max(1.0, std::abs(x)) * 4);
  }
}

TEST(Rational, PolesThrow) {
  EXPECT_THROW(r_eval(-1.0, -2.0), std::domain_error);
  EXPECT_THROW(r_inv(-2.0, -2.0), std::domain_error);
}

TEST(Coefficients, Values) {
  EXPECT_NEAR(coeffs(NormParams(-1.0, 1e-12)).alpha, 1.0, 1e-11);
  EXPECT_DOUBLE_EQ(coeffs(NormParams(-2.0, 0.5)).a_star, -1.0);
  EXPECT_NEAR(coeffs(NormParams(-2.0, 0.5)).alpha, 3.0 * std::exp(-0.25) - 2.0, 1e-15);
  EXPECT_NEAR(coeffs(NormParams(-2.0, 0.5)).alpha, 0.336402, 1e-6);
}

TEST(Coefficients, BetaMatchesReference) {
  for (double a : {-1.5, -3.0, -9.0})
    for (double th : {0.2, 0.5, 0.9}) EXPECT_NEAR(coeffs(NormParams(a, th)).beta, beta_ref(a, th), 1e-13);
}

TEST(Coefficients, GammaGuard) {
  EXPECT_TRUE(std::isnan(coeffs(NormParams(-2.0, 0.1)).gamma));
  EXPECT_THROW(gamma_coeff(NormParams(-2.0, 0.1)), std::domain_error);
  EXPECT_NO_THROW(gamma_coeff(NormParams(-2.0, 0.5)));
}

TEST(Rmap, ZeroAndSlope) {
  const NormParams np(-3.0, 0.6);
  const Coeffs c = coeffs(np);
  EXPECT_EQ(R_eval(0.0, c), 0.0);
  EXPECT_NEAR(central_diff([&](double r) { return R_eval(r, c); }, 0.0), c.alpha, 1e-8);
  const double slope = central_diff([&](double x) { return R_eval(r_eval(x, np.a()), c); }, 0.0);
  EXPECT_NEAR(slope, np.a() * c.alpha, 1e-8);
}

TEST(R2map, ZeroAndSlope) {
  for (double th : {0.4, 0.7, 0.95}) {
    const NormParams np(-2.5, th);
    EXPECT_EQ(R2_eval(0.0, np), 0.0);
    const double e = 1.0 + std::log(th) - th;
    const double expect = np.a() * e / (1.0 + e);
    EXPECT_NEAR(central_diff([&](double r) { return R2_eval(r, np); }, 0.0), expect, 1e-8);
  }
}

TEST(R2map, PoleGuardsAtDefaultPoint) {
  const NormParams np(-2.0, 0.9);
  const double R2a = R2_eval(np.a(), np);
  EXPECT_GT(R2a, -1.0);
  EXPECT_LT(r_eval(R2a, np.a()) * coeffs(np).beta, 1.0);
}

TEST(Psi, InverseAndZero) {
  const NormParams np(-3.0, 0.7);
  EXPECT_EQ(psi(0.0, np), 0.0);
  for (int k = 1; k < 1000; ++k) {
    const double M = np.a() + 0.05 + 10.0 * k / 1000.0;
    EXPECT_NEAR(psi_inv(psi(M, np), np), M, 1e-12 * std::max(1.0, std::abs(M)));
  }
}

TEST(Psi, SchwarzianClosedFormMatchesNumeric) {
  const NormParams np(-2.0, 0.6);
  Nonlinearity f;
  f.eval = [&](double x) { return psi(x, np); };
  f.domain_lo = np.a();
  for (double x : {-1.5, -0.5, 0.0, 1.0, 4.0}) {
    const double exact = psi_schwarzian(x, np);
    const double a = np.a(), th = np.theta();
    const double ref = -6.0 * th * a / std::pow(a * a - 2.0 * x * a + x * x - th * a, 2);
    EXPECT_NEAR(exact, ref, 1e-14 * std::abs(ref));
    EXPECT_GT(exact, 0.0);
    EXPECT_NEAR(schwarzian_numeric(f, x), exact, 1e-6 * std::abs(exact)) << x;
  }
}

TEST(Chi, ZeroSlopeAndDerivative) {
  for (double th : {0.3, 0.6, 0.9}) {
    const NormParams np(-1.5, th);
    EXPECT_EQ(chi(0.0, np), 0.0);
    const double fd = central_diff([&](double x) { return chi(x, np); }, 0.0, 1e-5);
    EXPECT_NEAR(fd, (1.0 - th) * 2.25 / (-1.5 - th), 1e-8);
    EXPECT_DOUBLE_EQ(chi_slope0(np), (1.0 - th) * 2.25 / (-1.5 - th));
    for (double x : {-0.5, 0.3, 2.0, 9.0})
      EXPECT_NEAR(chi_d1(x, np), central_diff([&](double y) { return chi(y, np); }, x, 1e-5), 1e-8);
  }
}

TEST(Chi, SlopeCriterionEquivalence) {
  for (int i = 1; i < 100; ++i)
    for (int j = 1; j < 100; ++j) {
      const NormParams np(-100.0 / j, i / 100.0);
      if (std::abs(linear_criterion_margin(np)) < 1e-12) continue;
      EXPECT_EQ(chi_slope0(np) > -1.0, linear_criterion(np));
    }
}

TEST(Chi, SchwarzianMatchesNumeric) {
  const NormParams np(-1.5, 0.6);
  const Nonlinearity f = chi_map(np);
  for (double x : {-0.8, -0.3, 0.5, 3.0, 8.0}) {
    const double exact = chi_schwarzian(x, np);
    EXPECT_LT(exact, 0.0);
    // Far from 0 the two terms of S chi nearly cancel; allow an absolute floor.
    EXPECT_NEAR(schwarzian_numeric(f, x), exact, 1e-5 * std::abs(exact) + 1e-7) << x;
    EXPECT_NEAR(schwarzian(f, x), exact, 1e-9 * std::abs(exact)) << x;
  }
}

TEST(Chi, SecondIterateConverges) {
  const NormParams np(-1.5, 0.6);
  ASSERT_TRUE(linear_criterion(np));
  const auto orbit = chi_iterate(5.0, 40, np);
  ASSERT_EQ(orbit.size(), 41u);
  for (std::size_t k = 2; k < orbit.size(); k += 2) EXPECT_LE(std::abs(orbit[k]), std::abs(orbit[k - 2]));
  EXPECT_LT(std::abs(orbit.back()), 1e-8);
}

TEST(Schwarzian, MoebiusIsZero) {
  const Nonlinearity r = make_rational(-2.0);
  for (double x : {-0.5, 0.0, 1.0, 10.0}) EXPECT_NEAR(schwarzian(r, x), 0.0, 1e-12);
}

TEST(Schwarzian, ExpAffineIsMinusHalf) {
  const Nonlinearity w = make_wright(-1.7);
  for (double x : {-3.0, 0.0, 2.0, 8.0}) EXPECT_NEAR(schwarzian(w, x), -0.5, 1e-12);
}

TEST(Schwarzian, CompositionRule) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ux(-0.4, 0.4);
  const std::vector<Nonlinearity> lib = {make_wright(-1.3), make_rational(-2.0, 0.5), make_ricker_shifted(std::exp(2.5)),
                                         make_linear(-0.7)};
  for (int i = 0; i < 200; ++i) {
    const auto& f = lib[i % lib.size()];
    const auto& g = lib[(i / lib.size()) % lib.size()];
    const double x = ux(rng);
    const double gx = g(x);
    if (gx <= f.domain_lo + 0.05) continue;
    if (std::abs(g.d1(x)) < 1e-3 || std::abs(f.d1(gx)) < 1e-3) continue;
    const Nonlinearity fg = compose(f, g);
    const double lhs = schwarzian(fg, x);
    const double rhs = g.d1(x) * g.d1(x) * schwarzian(f, gx) + schwarzian(g, x);
    EXPECT_NEAR(lhs, rhs, 1e-7 * std::max(1.0, std::abs(rhs))) << f.name << " o " << g.name << " at " << x;
  }
}

TEST(Schwarzian, CompositionChainRuleAgainstFiniteDifferences) {
  const Nonlinearity f = compose(make_wright(-1.3), make_rational(-2.0));
  for (double x : {-0.3, 0.2, 1.5}) {
    EXPECT_NEAR(f.d1(x), central_diff(f.eval, x), 1e-7);
    EXPECT_NEAR(f.d2(x), central_diff(f.d1, x), 1e-7);
    EXPECT_NEAR(f.d3(x), central_diff(f.d2, x), 1e-6);
  }
}

TEST(Schwarzian, CriticalPointThrows) {
  const Nonlinearity w = make_ricker_shifted(std::exp(3.0));
  EXPECT_THROW(schwarzian(w, *w.critical_point, 1e-12), std::domain_error);
}

TEST(Schwarzian, ReportSkipsCriticalPoint) {
  const Nonlinearity w = make_ricker_shifted(std::exp(3.0));
  const SchwarzReport rep = schwarz_report(w, -2.0, 4.0, 601, 1e-6);
  EXPECT_LT(rep.max_value, 0.0);
  EXPECT_FALSE(rep.values.empty());
}

TEST(Jmap, ValueAtZero) {
  for (double th : {0.3, 0.6, 0.9}) {
    const NormParams np(-2.0, th);
    const double l = np.lambda();
    EXPECT_NEAR(J0(np), (1.0 + l) / (1.0 - l), 1e-12 * J0(np));
    EXPECT_NEAR(J_eval(0.0, np), J0(np), 1e-12 * J0(np));
    EXPECT_NEAR(J_slope0(np), central_diff([&](double r) { return J_eval(r, np); }, 0.0, 1e-5),
                1e-6 * std::abs(J_slope0(np)));
  }
}

TEST(Jmap, SecondDerivativeMatchesFiniteDifferences) {
  for (double th : {0.3, 0.6, 0.95})
    for (double a : {-1.5, -4.0}) {
      const NormParams np(a, th);
      for (double r : {-0.2, -0.05, 0.0, 0.3, 2.0, 5.0}) {
        const double e = 1e-3;
        const double fd = (J_eval(r + e, np) - 2.0 * J_eval(r, np) + J_eval(r - e, np)) / (e * e);
        EXPECT_NEAR(J_second(r, np), fd, 1e-4 * std::max(1e-2, std::abs(fd))) << a << " " << th << " " << r;
        EXPECT_LT(J_second(r, np), 0.0);
      }
    }
}

TEST(Jmap, TangentBoundsFromAbove) {
  for (int i = 1; i < 32; ++i)
    for (int j = 1; j < 32; ++j) {
      const double th = i / 32.0, mu = j / 32.0;
      if (!in_domain_D(th, mu)) continue;
      const NormParams np(-1.0 / mu, th);
      for (int k = 1; k <= 64; ++k) {
        const double r = -0.25 + 5.25 * k / 64.0;
        EXPECT_LE(J_eval(r, np), J_tangent(r, np) + 1e-12 * std::abs(J_tangent(r, np)));
      }
    }
}

TEST(CubicLogGap, EndpointConstant) {
  EXPECT_NEAR(cubic_log_gap(-0.2), 5.6448685790244389e-05, 1e-15);
  const DD y = cubic_log_gap(DD(-0.2));
  EXPECT_NEAR(to_double(y), 5.6448685790244389e-05, 1e-20);
}
