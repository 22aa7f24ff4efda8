// Command-line front end: check, region, map, simulate, nicholson, verify.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ddestab/ddesim.hpp"
#include "ddestab/io.hpp"
#include "ddestab/models.hpp"
#include "ddestab/onedmaps.hpp"
#include "ddestab/params.hpp"
#include "ddestab/ratmaps.hpp"
#include "ddestab/sweep.hpp"
#include "ddestab/verify.hpp"

using namespace ddestab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double x) { return format_double(x); }

std::string short_fmt(double x) {
  if (!std::isfinite(x)) return format_double(x);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string certificate_name(Region r) {
  switch (r) {
    case Region::GloballyStableLinear:
      return "linear";
    case Region::GloballyStableDStar:
      return "D*";
    case Region::GloballyStableS:
      return "S";
    case Region::NotCertified:
      break;
  }
  return "none";
}

void print_certificate(const Certificate& cert) {
  std::cout << "region: " << to_string(cert.region.tag);
  if (cert.region.reason != RegionReason::None) std::cout << " (" << to_string(cert.region.reason) << ")";
  std::cout << "\n";
  if (!cert.chain.empty()) {
    std::cout << "certificate chain:\n";
    for (const auto& f : cert.chain)
      std::cout << "  [" << (f.holds ? "ok" : "FAILED") << "] " << f.statement << "  value=" << short_fmt(f.value) << "\n";
  }
  for (const auto& f : cert.failing)
    if (cert.chain.empty()) std::cout << "failing: " << f.statement << "  margin=" << short_fmt(f.value) << "\n";
}

bool certificate_ok(const Certificate& c) { return c.region.certified() && c.failing.empty(); }

// "name:key=value,key=value"
std::pair<std::string, std::map<std::string, double>> parse_model_arg(const std::string& arg) {
  const auto colon = arg.find(':');
  const std::string name = arg.substr(0, colon);
  std::map<std::string, double> kv;
  if (colon != std::string::npos) {
    std::stringstream ss(arg.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("expected key=value in '" + item + "'");
      try {
        std::size_t used = 0;
        const std::string val = item.substr(eq + 1);
        const double v = std::stod(val, &used);
        if (used != val.size()) throw std::invalid_argument(val);
        kv[item.substr(0, eq)] = v;
      } catch (const std::logic_error&) {
        throw UsageError("not a number in '" + item + "'");
      }
    }
  }
  return {name, kv};
}

double need(const std::map<std::string, double>& kv, const std::string& key, const std::string& ctx) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw UsageError(ctx + ": missing " + key + "=");
  return it->second;
}

double get_or(const std::map<std::string, double>& kv, const std::string& key, double fallback) {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

Nonlinearity model_from_arg(const std::string& arg) {
  const auto [name, kv] = parse_model_arg(arg);
  try {
    if (name == "ricker") return make_ricker_shifted(need(kv, "q", "ricker"));
    if (name == "nicholson") return make_nicholson_raw(need(kv, "p", "nicholson"), get_or(kv, "gamma", 1.0));
    if (name == "wright") return make_wright(get_or(kv, "a", -1.0));
    if (name == "mackey") return make_mackey_glass(need(kv, "b", "mackey"), need(kv, "n", "mackey"));
    if (name == "wazewska") return make_wazewska(need(kv, "b1", "wazewska"), need(kv, "b2", "wazewska"));
    if (name == "rational") return make_rational(need(kv, "a", "rational"), get_or(kv, "b", 1.0));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("model: ") + e.what());
  } catch (const std::domain_error& e) {
    throw UsageError(std::string("model: ") + e.what());
  }
  throw UsageError("unknown model '" + name + "' (ricker, nicholson, wright, mackey, wazewska, rational)");
}

History history_from_arg(const std::string& arg) {
  const auto colon = arg.find(':');
  const std::string kind = arg.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : arg.substr(colon + 1);
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::logic_error&) {
      throw UsageError("history: not a number '" + s + "'");
    }
  };
  if (kind == "const") return History::constant(number(rest));
  if (kind == "ramp") return History::ramp(number(rest));
  const std::string path = kind == "file" ? rest : arg;
  if (!std::filesystem::exists(path)) throw UsageError("history: no such file '" + path + "'");
  std::vector<double> s, v;
  read_history_csv(path, s, v);
  try {
    return History::sampled(std::move(s), std::move(v));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("history: ") + e.what());
  }
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

// ---- subcommands ------------------------------------------------------------

struct CheckOpts {
  double a = NAN, delta = 1.0, h = NAN, b = 1.0;
};

int run_check(const CheckOpts& o) {
  require(o.a < 0.0, "--a must be negative");
  require(o.delta > 0.0, "--delta must be positive");
  require(o.h >= 0.0, "--h must be nonnegative");
  require(o.b > 0.0, "--b must be positive");
  const NormParams np = normalize(ParamSet(o.a, o.delta, o.h, o.b));
  std::cout << "normalized: a=" << fmt(np.a()) << " theta=" << fmt(np.theta()) << " h=" << fmt(np.h()) << "\n";
  std::cout << "criterion (-delta/a) e^{-h delta} > ln((a^2 - a delta)/(delta^2 + a^2)): "
            << (criterion_delta(o.a, o.delta, o.h) ? "holds" : "fails")
            << "  margin=" << short_fmt(criterion_delta_margin(o.a, o.delta, o.h)) << "\n";
  std::cout << "linear criterion -theta/a > -(a + 1)/(a^2 + 1): " << (linear_criterion(np) ? "holds" : "fails")
            << "  margin=" << short_fmt(linear_criterion_margin(np)) << "\n";
  std::cout << "critical delay (global test): " << short_fmt(global_critical_delay(o.a, o.delta)) << "\n";
  const auto loc = local_critical_delay(o.a, o.delta);
  std::cout << "critical delay (local stability): " << (loc ? short_fmt(*loc) : std::string("inf")) << "\n";
  const Certificate cert = certificate(np);
  print_certificate(cert);
  if (certificate_ok(cert)) {
    std::cout << "globally stable (" << certificate_name(cert.region.tag) << " certificate)\n";
    return kExitOk;
  }
  std::cout << "not certified (no instability claim)\n";
  return kExitFail;
}

struct RegionOpts {
  std::string out = "figures";
  int fig1 = 1000, curves = 1000, raster = 256;
};

int run_region(const RegionOpts& o) {
  require(o.fig1 >= 1 && o.curves >= 2 && o.raster >= 2, "point counts too small");
  const FigureSummary s = sweep_figures(o.out, {o.fig1, o.curves, o.raster});
  for (const auto& f : s.files) std::cout << "wrote " << f << "\n";
  std::cout << "fig1: points=" << s.fig1_points << " max_gap=" << short_fmt(s.max_gap)
            << " min_gap=" << short_fmt(s.min_gap)
            << " global_inside_local=" << (s.global_inside_local ? "yes" : "no") << "\n";
  std::cout << "fig2: D=" << s.d_cells << " D*=" << s.dstar_cells << " S=" << s.s_cells
            << " linear=" << s.linear_cells << " ordering=" << (s.ordering_ok ? "ok" : "violated") << "\n";
  return kExitOk;
}

struct MapOpts {
  double a = NAN, theta = NAN, zmin = NAN, zmax = NAN;
  int n = 100;
  std::string out;
};

int run_map(const MapOpts& o) {
  require(o.a < -1.0, "--a must be below -1");
  require(o.theta > 0.0 && o.theta < 1.0, "--theta must lie in (0, 1)");
  require(o.zmin > -1.0, "--zmin must exceed -1");
  require(o.zmax >= o.zmin, "--zmax must be >= --zmin");
  require(o.n >= 1, "--n must be positive");
  const NormParams np(o.a, o.theta);
  const Coeffs c = coeffs(np);
  std::string csv = csv_row(std::vector<std::string>{"z", "r", "F", "F_status", "F1", "F1_status", "R", "R2"});
  for (int k = 0; k <= o.n; ++k) {
    const double z = o.n == 0 ? o.zmin : o.zmin + (o.zmax - o.zmin) * k / o.n;
    const double r = r_eval(z, np.a());
    auto solve = [&](auto fn) {
      try {
        return fn(z, np);
      } catch (const std::exception&) {
        MapSolve m;
        m.status = SolveStatus::OutsideDomain;
        return m;
      }
    };
    const MapSolve F = solve(F_solve);
    const MapSolve F1 = solve(F1_solve);
    double R = NAN, R2 = NAN;
    try {
      R = R_eval(r, c);
    } catch (const std::exception&) {
    }
    try {
      R2 = R2_eval(r, np);
    } catch (const std::exception&) {
    }
    csv += csv_row(std::vector<std::string>{fmt(z), fmt(r), fmt(F.value), std::string(to_string(F.status)),
                                            fmt(F1.value), std::string(to_string(F1.status)), fmt(R), fmt(R2)});
  }
  if (o.out.empty()) {
    std::cout << csv;
  } else {
    write_text_file(o.out, csv);
    std::cout << "wrote " << o.out << "\n";
  }
  return kExitOk;
}

struct SimOpts {
  std::string model, history, out;
  double h = NAN, delta = 1.0, T = NAN, step = 0.0;
};

int run_simulate(const SimOpts& o) {
  require(o.h > 0.0, "--h must be positive");
  require(o.delta > 0.0, "--delta must be positive");
  require(o.T > 0.0, "--T must be positive");
  require(o.step >= 0.0, "--step must be nonnegative");
  const Nonlinearity w = model_from_arg(o.model);
  const History hist = history_from_arg(o.history);
  try {
    hist.check_covers(o.h);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  SimConfig cfg;
  cfg.h = o.h;
  cfg.delta = o.delta;
  cfg.T = o.T;
  cfg.step = o.step;
  const Trajectory tr = integrate(w, hist, cfg);
  const std::string csv = trajectory_csv(tr);
  if (o.out.empty()) {
    std::cout << csv;
    return kExitOk;
  }
  write_text_file(o.out, csv);
  const AsymptoticBounds b = asymptotic_bounds(tr);
  std::cout << "wrote " << o.out << " (" << tr.values.size() << " rows, step=" << fmt(tr.step) << ")\n";
  std::cout << "x(T)=" << fmt(tr.values.back()) << " liminf~" << short_fmt(b.m) << " limsup~" << short_fmt(b.M)
            << (b.low_confidence ? " (low confidence)" : "") << "\n";
  return kExitOk;
}

struct NichOpts {
  double p = NAN, delta = NAN, gamma = NAN, h = NAN;
  int simulate = 0;
  unsigned long long seed = 1;
  double horizon = 200.0;
  double tol = 1e-3;
};

int run_nicholson(const NichOpts& o) {
  require(o.p > 0.0 && o.delta > 0.0 && o.gamma > 0.0 && o.h > 0.0, "--p, --delta, --gamma, --h must be positive");
  require(o.p > o.delta, "--p must exceed --delta for a positive equilibrium");
  require(o.simulate >= 0, "--simulate must be nonnegative");
  require(o.horizon > 0.0 && o.tol > 0.0, "--horizon and --tol must be positive");
  const NicholsonParams par{o.p, o.delta, o.gamma, o.h};
  const NicholsonReport rep = nicholson_report(par);
  std::cout << "q=p/delta=" << fmt(rep.q) << " N*=" << fmt(rep.N_star) << " c=ln q - 1=" << fmt(rep.c)
            << " delta*h=" << fmt(rep.tau) << "\n";
  std::cout << "global stability test: " << (rep.global ? "holds" : "fails") << "\n";
  if (rep.has_rational_bound)
    std::cout << "rational bound: a=" << fmt(rep.a) << " b=" << fmt(rep.b) << "\n";
  std::cout << "region: " << to_string(rep.region.tag);
  if (rep.region.reason != RegionReason::None) std::cout << " (" << to_string(rep.region.reason) << ")";
  std::cout << "\n";
  if (rep.has_attractor) {
    const auto& ab = rep.attractor;
    std::cout << "attractor bounds: m*=" << short_fmt(ab.m_star) << " x1=" << short_fmt(ab.x1)
              << " g^2(1)=" << short_fmt(ab.g2_1) << " g^3(1)=" << short_fmt(ab.g3_1)
              << " (i)=" << (ab.check_i ? "ok" : "fails") << " (ii)=" << (ab.check_ii ? "ok" : "fails") << "\n";
  }
  const bool certified = rep.global || rep.region.certified();
  if (certified)
    std::cout << "stable: N* attracts all positive solutions\n";
  else
    std::cout << "NotCertified (no instability claim)\n";

  if (o.simulate > 0) {
    const Nonlinearity w = make_nicholson_raw(o.p, o.gamma);
    const double Ns = rep.N_star;
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> level(0.1, 3.0), amp(0.0, 0.9), freq(0.5, 6.0), phase(0.0, 6.283185307179586);
    int converged = 0;
    for (int i = 0; i < o.simulate; ++i) {
      const double l = level(rng), A = amp(rng), f = freq(rng), ph = phase(rng);
      const History hist = History::function([=](double s) { return Ns * l * (1.0 + A * std::sin(f * s / o.h + ph)); });
      SimConfig cfg;
      cfg.h = o.h;
      cfg.delta = o.delta;
      cfg.T = o.horizon * o.h;
      cfg.step = o.h / 128.0;
      const Trajectory tr = integrate(w, hist, cfg);
      const double err = std::abs(tr.values.back() - Ns);
      const bool ok = err < o.tol * Ns;
      converged += ok;
      std::cout << "sim " << i << ": |N(T)-N*|/N*=" << short_fmt(err / Ns) << (ok ? " converged" : " not converged")
                << "\n";
    }
    std::cout << "simulations converged: " << converged << "/" << o.simulate << "\n";
  }
  return certified ? kExitOk : kExitFail;
}

struct VerifyOpts {
  std::string lemma = "all";
  int resolution = 256;
  std::string out = "reports";
  bool serial = false;
};

int run_verify(const VerifyOpts& o) {
  require(o.resolution >= 2, "--resolution must be at least 2");
  std::vector<std::string> ids;
  if (o.lemma == "all") {
    ids = lemma_ids();
  } else {
    const auto& known = lemma_ids();
    if (std::find(known.begin(), known.end(), o.lemma) == known.end())
      throw UsageError("unknown lemma '" + o.lemma + "'");
    ids = {o.lemma};
  }
  bool all_ok = true;
  for (const auto& id : ids) {
    const LemmaReport rep = verify_lemma(id, o.resolution, o.serial ? Exec::Serial : Exec::Parallel);
    const std::string path = (std::filesystem::path(o.out) / (id + ".json")).string();
    write_text_file(path, lemma_report_json(rep));
    all_ok = all_ok && rep.passed();
    std::cout << (rep.passed() ? "PASS " : "FAIL ") << id << " points=" << rep.points_checked
              << " violations=" << rep.violation_count << " min_margin=" << short_fmt(rep.min_margin) << " ("
              << rep.margin_kind << ") -> " << path << "\n";
  }
  return all_ok ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  configure_threads_from_env();

  CLI::App app{"Global stability certificates for delay differential equations with rational feedback bounds"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1, 1);

  CheckOpts check;
  auto* c = app.add_subcommand("check", "Evaluate the stability criteria and print a certificate");
  c->add_option("--a", check.a, "Feedback slope a < 0")->required();
  c->add_option("--delta", check.delta, "Decay rate delta > 0");
  c->add_option("--h", check.h, "Delay h >= 0")->required();
  c->add_option("--b", check.b, "Rational-bound curvature b > 0");

  RegionOpts region;
  auto* r = app.add_subcommand("region", "Write stability-domain CSV data");
  r->add_option("--out", region.out, "Output directory");
  r->add_option("--fig1-points", region.fig1, "Samples of c in (0, 10]");
  r->add_option("--curve-points", region.curves, "Boundary curve resolution in mu");
  r->add_option("--raster-points", region.raster, "Raster resolution per axis");

  MapOpts map;
  auto* m = app.add_subcommand("map", "Tabulate F, F1, R and R2");
  m->add_option("--a", map.a, "a < -1")->required();
  m->add_option("--theta", map.theta, "theta in (0, 1)")->required();
  m->add_option("--zmin", map.zmin, "First z")->required();
  m->add_option("--zmax", map.zmax, "Last z")->required();
  m->add_option("--n", map.n, "Number of intervals");
  m->add_option("--out", map.out, "CSV file (stdout if omitted)");

  SimOpts sim;
  auto* s = app.add_subcommand("simulate", "Integrate x' = -delta x + w(x(t - h))");
  s->add_option("--model", sim.model, "ricker:q=, nicholson:p=,gamma=, wright:a=, mackey:b=,n=, wazewska:b1=,b2=, rational:a=,b=")
      ->required();
  s->add_option("--history", sim.history, "const:<z>, ramp:<rz>, or a CSV file of s,value rows")->required();
  s->add_option("--h", sim.h, "Delay")->required();
  s->add_option("--delta", sim.delta, "Decay rate");
  s->add_option("--T", sim.T, "Integration horizon")->required();
  s->add_option("--step", sim.step, "Time step (default h/256)");
  s->add_option("--out", sim.out, "CSV file (stdout if omitted)");

  NichOpts nich;
  auto* n = app.add_subcommand("nicholson", "Nicholson blowflies: stability test, attractor bounds, simulations");
  n->add_option("--p", nich.p, "Birth rate p")->required();
  n->add_option("--delta", nich.delta, "Death rate delta")->required();
  n->add_option("--gamma", nich.gamma, "Crowding rate gamma")->required();
  n->add_option("--h", nich.h, "Delay")->required();
  n->add_option("--simulate", nich.simulate, "Number of random-history simulations");
  n->add_option("--seed", nich.seed, "RNG seed");
  n->add_option("--horizon", nich.horizon, "Simulation length in units of h");
  n->add_option("--tol", nich.tol, "Relative convergence tolerance");

  VerifyOpts ver;
  auto* v = app.add_subcommand("verify", "Grid-verify the auxiliary inequalities and write JSON reports");
  v->add_option("--lemma", ver.lemma, "Lemma id or 'all'");
  v->add_option("--resolution", ver.resolution, "Points per axis");
  v->add_option("--out", ver.out, "Report directory");
  v->add_flag("--serial", ver.serial, "Disable parallel sweeps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (c->parsed()) return run_check(check);
    if (r->parsed()) return run_region(region);
    if (m->parsed()) return run_map(map);
    if (s->parsed()) return run_simulate(sim);
    if (n->parsed()) return run_nicholson(nich);
    if (v->parsed()) return run_verify(ver);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
