// Acceptance gate: one PASS/FAIL line per criterion.
//   acceptance            run all criteria
//   acceptance 3 5        run a subset
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ddestab/ddesim.hpp"
#include "ddestab/ddouble.hpp"
#include "ddestab/models.hpp"
#include "ddestab/onedmaps.hpp"
#include "ddestab/params.hpp"
#include "ddestab/ratmaps.hpp"
#include "ddestab/roots.hpp"
#include "ddestab/verify.hpp"

using namespace ddestab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// theta where m(theta) changes sign on (lo, hi), by plain bisection.
double bisect_theta(const std::function<double(double)>& m, double lo, double hi) {
  double mlo = m(lo);
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double mm = m(mid);
    if ((mm > 0) == (mlo > 0)) {
      lo = mid;
      mlo = mm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Outcome boundary_identities() {
  double err = 0.0, err_root = 0.0;
  for (int k = 1; k <= 1000; ++k) {
    const double mu = k / 1001.0;
    const double a = -1.0 / mu;
    const double t2 = -a * std::log((a * a - a) / (a * a + 1.0));
    const double t1 = a * (a + 1.0) / (a * a + 1.0);
    err = std::max({err, std::abs(pi_curve(2, mu) - t2), std::abs(pi_curve(1, mu) - t1)});
    // Roots of the criterion margins themselves, located without the closed forms.
    const double r2 = bisect_theta([a](double th) { return criterion_norm_margin(NormParams(a, th)); }, 1e-300, 1.0 - 1e-16);
    const double r1 = bisect_theta([a](double th) { return linear_criterion_margin(NormParams(a, th)); }, 1e-300, 1.0 - 1e-16);
    err_root = std::max({err_root, std::abs(pi_curve(2, mu) - r2), std::abs(pi_curve(1, mu) - r1)});
  }
  const double worst = std::max(err, err_root);
  return {worst <= 1e-12, "max_abs_err=" + fmt("%.3e", err) + " root_err=" + fmt("%.3e", err_root)};
}

Outcome myshkis() {
  const double a = -1.0;
  const double g = -a * global_critical_delay(a, 1e-4);
  const auto hl = local_critical_delay(a, 1e-7);
  const double l = hl ? -a * *hl : NAN;
  const bool pass = std::abs(g - 1.5) <= 1e-3 && std::abs(l - std::numbers::pi / 2) <= 1e-3;
  return {pass, "-a*h_global=" + fmt("%.6f", g) + " -a*h_local=" + fmt("%.6f", l)};
}

// (theta, mu) uniformly in the unit square, kept when the predicate holds.
template <class Pred>
NormParams sample_domain(std::mt19937_64& rng, Pred in) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    const double th = u(rng), mu = u(rng);
    if (th > 0.0 && mu > 0.0 && in(th, mu)) return NormParams(-1.0 / mu, th);
  }
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  double worst_f = 0.0, worst_f1 = 0.0;
  int triples = 0, failures = 0;
  // 100 parameter points, 5 z each for F and 5 for F1.
  for (int p = 0; p < 100; ++p) {
    const NormParams np = sample_domain(rng, [](double th, double mu) { return in_domain_D(th, mu) && th < 0.97; });
    const IntervalI I = interval_I(np);
    for (int k = 0; k < 5; ++k) {
      const double z = I.lo + (I.hi - I.lo) * u(rng);
      const MapSolve s = F_solve(z, np);
      if (!s.ok()) {
        ++failures;
        continue;
      }
      worst_f = std::max(worst_f, std::abs(s.value - F_sim(z, np)));
      ++triples;
    }
    for (int k = 0; k < 5; ++k) {
      const double z = 20.0 * u(rng);
      const MapSolve s = F1_solve(z, np);
      if (!s.ok()) {
        ++failures;
        continue;
      }
      worst_f1 = std::max(worst_f1, std::abs(s.value - F1_sim(z, np)));
      ++triples;
    }
  }
  const bool pass = failures == 0 && triples >= 500 && worst_f <= 1e-4 && worst_f1 <= 1e-4;
  return {pass, "triples=" + std::to_string(triples) + " solve_failures=" + std::to_string(failures) +
                    " max|F-F_sim|=" + fmt("%.3e", worst_f) + " max|F1-F1_sim|=" + fmt("%.3e", worst_f1)};
}

// Margin in double, re-evaluated in double-double when it is within 1e-9.
template <class Dbl, class Ext>
double margin_with_fallback(Dbl dbl, Ext ext) {
  const double m = dbl();
  if (std::isfinite(m) && std::abs(m) > 1e-9) return m;
  return ext();
}

Outcome comparison_suite() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int per = 10000;
  long long samples = 0, violations = 0;
  double min_m[4] = {INFINITY, INFINITY, INFINITY, INFINITY};
  auto record = [&](int which, double m) {
    ++samples;
    if (!(m > 0.0)) ++violations;
    min_m[which] = std::min(min_m[which], m);
  };
  for (int i = 0; i < per; ++i) {
    // calF > R on [a*, 0)
    const NormParams np = sample_domain(rng, in_domain_D);
    const DD A(np.a()), TH(np.theta());
    const double r = np.a_star() * (1.0 - u(rng));
    if (r == 0.0) continue;
    record(0, margin_with_fallback(
                  [&] {
                    const MapSolve s = calF(r, np);
                    return s.ok() ? s.value - R_eval(r, coeffs(np)) : NAN;
                  },
                  [&] { return to_double(calF_dd(r, np) - R_eval_t(DD(r), alpha_t(A, TH), beta_t(A, TH))); }));
  }
  for (int i = 0; i < per; ++i) {
    // calF < R on (0, 1/beta)
    const NormParams np = sample_domain(rng, in_domain_D);
    const DD A(np.a()), TH(np.theta());
    const double r = u(rng) / coeffs(np).beta;
    if (r == 0.0) continue;
    record(1, margin_with_fallback(
                  [&] {
                    const MapSolve s = calF(r, np);
                    return s.ok() ? R_eval(r, coeffs(np)) - s.value : NAN;
                  },
                  [&] { return to_double(R_eval_t(DD(r), alpha_t(A, TH), beta_t(A, TH)) - calF_dd(r, np)); }));
  }
  for (int i = 0; i < per; ++i) {
    // calF1 > R on (a, a*]
    const NormParams np = sample_domain(rng, in_domain_Dstar);
    const DD A(np.a()), TH(np.theta());
    const double r = np.a_star() + (np.a() - np.a_star()) * u(rng);
    if (r == np.a()) continue;
    record(2, margin_with_fallback(
                  [&] {
                    const MapSolve s = calF1(r, np);
                    return s.ok() ? s.value - R_eval(r, coeffs(np)) : NAN;
                  },
                  [&] { return to_double(calF1_dd(r, np) - R_eval_t(DD(r), alpha_t(A, TH), beta_t(A, TH))); }));
  }
  for (int i = 0; i < per; ++i) {
    // calF1 > R2 on (a, 0) with h <= 1
    const NormParams np = sample_domain(rng, [](double th, double mu) { return th >= std::exp(-1.0) && in_domain_D(th, mu); });
    const double r = np.a() * u(rng);
    if (r == 0.0 || r == np.a()) continue;
    record(3, margin_with_fallback(
                  [&] {
                    const MapSolve s = calF1(r, np);
                    return s.ok() ? s.value - R2_eval(r, np) : NAN;
                  },
                  [&] { return to_double(calF1_dd(r, np) - R2_eval_t(DD(r), DD(np.a()), DD(np.theta()))); }));
  }
  return {samples >= 10000 && violations == 0,
          "samples=" + std::to_string(samples) + " violations=" + std::to_string(violations) + " min_margins=" +
              fmt("%.3e", min_m[0]) + "," + fmt("%.3e", min_m[1]) + "," + fmt("%.3e", min_m[2]) + "," +
              fmt("%.3e", min_m[3])};
}

Outcome lemma_suite() {
  long long violations = 0;
  double r303 = NAN;
  std::string failing;
  for (const std::string& id : lemma_ids()) {
    const LemmaReport rep = verify_lemma(id, 256);
    violations += rep.violation_count;
    if (std::isnan(rep.min_margin)) ++violations;
    if (!rep.passed()) failing += " " + id;
    if (id == "r303") r303 = rep.min_margin;
  }
  // Third iterate of g(x) = q x e^{-x} from 1 stays above ln q.
  double min_gap = INFINITY;
  const double hi = 2.833157;
  for (int k = 0; k <= 2000; ++k) {
    const double L = 2.0 + (hi - 2.0) * k / 2000.0;
    const double q = std::exp(L);
    double x = 1.0;
    for (int i = 0; i < 3; ++i) x = q * x * std::exp(-x);
    min_gap = std::min(min_gap, x - L);
  }
  const bool pass = violations == 0 && std::abs(r303 - 5.644e-5) <= 1e-8 && min_gap > 0.0;
  return {pass, "lemmas=" + std::to_string(lemma_ids().size()) + " violations=" + std::to_string(violations) +
                    (failing.empty() ? "" : " failing:" + failing) + " r303_min_margin=" + fmt("%.10e", r303) +
                    " min(g3(1)-ln q)=" + fmt("%.4e", min_gap)};
}

Outcome nicholson_end_to_end() {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> lvl(0.05, 3.0), freq(0.2, 8.0), amp(0.0, 0.9);
  const double delta = 1.0, gamma = 1.0;
  const double p = std::exp(3.0) * delta;
  int runs = 0, converged = 0;
  bool certified = true;
  double worst = 0.0;
  for (double tau : {0.5, 0.9}) {
    const NicholsonParams np{p, delta, gamma, tau / delta};
    const NicholsonReport rep = nicholson_report(np);
    certified = certified && rep.global && rep.region.certified();
    const double Nstar = np.N_star();
    const Nonlinearity w = make_nicholson_raw(p, gamma);
    for (int i = 0; i < 20; ++i) {
      const double l = lvl(rng), f = freq(rng), A = amp(rng);
      SimConfig cfg;
      cfg.delta = delta;
      cfg.h = np.h;
      cfg.T = 200.0 * np.h;
      const Trajectory tr =
          integrate(w, History::function([=](double s) { return Nstar * l * (1.0 + A * std::sin(f * s)); }), cfg);
      const double rel = std::abs(tr.values.back() - Nstar) / Nstar;
      worst = std::max(worst, rel);
      ++runs;
      if (rel < 1e-3) ++converged;
    }
  }
  const NicholsonReport out = nicholson_report({p, delta, gamma, 1.2 / delta});
  const bool not_cert = !out.global && out.region.tag == Region::NotCertified;
  return {certified && converged == runs && not_cert,
          "converged=" + std::to_string(converged) + "/" + std::to_string(runs) + " max_rel_err=" + fmt("%.3e", worst) +
              " tau=1.2:" + std::string(not_cert ? "NotCertified" : "certified")};
}

Outcome chi_contraction() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int points = 0, ok = 0, worst_iters = 0;
  while (points < 10) {
    const double a = -1.0 - 4.0 * u(rng), th = u(rng);
    const NormParams np(a, th);
    if (!linear_criterion(np)) continue;
    ++points;
    bool all = true;
    for (double x0 : {-0.9, 0.5, 5.0, 50.0}) {
      double x = x0;
      int it = 0;
      for (; it < 1000 && !(std::abs(x) < 1e-8); ++it) x = chi(chi(x, np), np);
      worst_iters = std::max(worst_iters, it);
      all = all && std::abs(x) < 1e-8;
    }
    if (all) ++ok;
  }
  return {ok == points, "points=" + std::to_string(points) + " contracting=" + std::to_string(ok) +
                            " max_iterations=" + std::to_string(worst_iters)};
}

Outcome figure_reproduction() {
  FigureOptions opt;
  const FigureSummary s = summarize_figures(opt);
  const bool pass = s.global_inside_local && s.d_cells > 0 && s.dstar_cells > 0 && s.s_cells > 0 && s.ordering_ok;
  return {pass, "fig1_points=" + std::to_string(s.fig1_points) + " max_gap=" + fmt("%.4e", s.max_gap) +
                    " min_gap=" + fmt("%.4e", s.min_gap) + " D=" + std::to_string(s.d_cells) +
                    " D*=" + std::to_string(s.dstar_cells) + " S=" + std::to_string(s.s_cells) +
                    " ordering=" + (s.ordering_ok ? "ok" : "violated")};
}

struct Criterion {
  const char* name;
  double budget_s;
  Outcome (*run)();
};

}  // namespace

int main(int argc, char** argv) {
  configure_threads_from_env();
  const std::vector<Criterion> all = {
      {"boundary_identities", 1.0, boundary_identities},
      {"myshkis_limit", 1.0, myshkis},
      {"oracle_equivalence", 120.0, oracle_equivalence},
      {"comparison_suite", 600.0, comparison_suite},
      {"lemma_suite", 600.0, lemma_suite},
      {"nicholson_end_to_end", 300.0, nicholson_end_to_end},
      {"chi_contraction", 60.0, chi_contraction},
      {"figure_reproduction", 600.0, figure_reproduction},
  };
  std::vector<int> pick;
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k < 1 || k > static_cast<int>(all.size())) {
      std::fprintf(stderr, "unknown criterion %s\n", argv[i]);
      return 2;
    }
    pick.push_back(k);
  }
  if (pick.empty())
    for (int k = 1; k <= static_cast<int>(all.size()); ++k) pick.push_back(k);

  int failed = 0;
  for (int k : pick) {
    const Criterion& c = all[k - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s AC%d %s %s time=%.2fs%s\n", pass ? "PASS" : "FAIL", k, c.name, o.detail.c_str(), secs,
                in_time ? "" : " (over budget)");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
