#include "ddestab/ddesim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "ddestab/onedmaps.hpp"
#include "ddestab/ratmaps.hpp"

namespace ddestab {

namespace {

double hermite(double y0, double y1, double d0, double d1, double dt, double u) {
  const double u2 = u * u;
  const double u3 = u2 * u;
  return (2.0 * u3 - 3.0 * u2 + 1.0) * y0 + (u3 - 2.0 * u2 + u) * dt * d0 + (-2.0 * u3 + 3.0 * u2) * y1 +
         (u3 - u2) * dt * d1;
}

// Vertex value and abscissa (in units of the spacing, relative to the middle
// sample) of the parabola through three equally spaced samples.
std::pair<double, double> parabola_vertex(double ym, double y0, double yp) {
  const double curv = ym - 2.0 * y0 + yp;
  if (curv == 0.0) return {y0, 0.0};
  const double off = 0.5 * (ym - yp) / curv;
  if (std::abs(off) > 1.0) return {y0, 0.0};
  return {y0 - 0.125 * (yp - ym) * (yp - ym) / curv, off};
}

}  // namespace

History History::constant(double z) {
  History h;
  h.kind_ = HistoryKind::Constant;
  h.z_ = z;
  return h;
}

History History::ramp(double rz) {
  History h;
  h.kind_ = HistoryKind::Ramp;
  h.z_ = rz;
  return h;
}

History History::sampled(std::vector<double> s, std::vector<double> v) {
  if (s.size() != v.size() || s.size() < 2) throw std::invalid_argument("History::sampled: need >= 2 matching samples");
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!(s[i] > s[i - 1])) throw std::invalid_argument("History::sampled: abscissae must increase");
  History h;
  h.kind_ = HistoryKind::Sampled;
  const std::size_t n = s.size();
  h.slope_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) {
      h.slope_[i] = (v[1] - v[0]) / (s[1] - s[0]);
    } else if (i == n - 1) {
      h.slope_[i] = (v[n - 1] - v[n - 2]) / (s[n - 1] - s[n - 2]);
    } else {
      // three-point derivative on a nonuniform grid
      const double hl = s[i] - s[i - 1];
      const double hr = s[i + 1] - s[i];
      h.slope_[i] = (hl * hl * (v[i + 1] - v[i]) + hr * hr * (v[i] - v[i - 1])) / (hl * hr * (hl + hr));
    }
  }
  h.s_ = std::move(s);
  h.v_ = std::move(v);
  return h;
}

History History::function(std::function<double(double)> fn) {
  History h;
  h.kind_ = HistoryKind::Function;
  h.fn_ = std::move(fn);
  return h;
}

double History::operator()(double s) const {
  switch (kind_) {
    case HistoryKind::Constant:
      return z_;
    case HistoryKind::Ramp:
      return -std::expm1(-s) * z_;
    case HistoryKind::Function:
      return fn_(s);
    case HistoryKind::Sampled: {
      if (s <= s_.front()) return v_.front();
      if (s >= s_.back()) return v_.back();
      const auto it = std::upper_bound(s_.begin(), s_.end(), s);
      const std::size_t j = static_cast<std::size_t>(it - s_.begin()) - 1;
      const double dt = s_[j + 1] - s_[j];
      return hermite(v_[j], v_[j + 1], slope_[j], slope_[j + 1], dt, (s - s_[j]) / dt);
    }
  }
  return NAN;
}

void History::check_covers(double h) const {
  if (kind_ != HistoryKind::Sampled) return;
  const double tol = 1e-9 * std::max(1.0, h);
  if (s_.front() > -h + tol || s_.back() < -tol)
    throw std::invalid_argument("History: samples must cover [-h, 0]");
}

double Trajectory::at(double t) const {
  if (values.empty()) throw std::logic_error("Trajectory::at: empty trajectory");
  const double x = (t - t0) / step;
  const double last = static_cast<double>(values.size() - 1);
  if (x < -1e-9 || x > last + 1e-9) throw std::domain_error("Trajectory::at: time outside the run");
  const double xc = std::clamp(x, 0.0, last);
  std::size_t j = static_cast<std::size_t>(std::floor(xc));
  if (j >= values.size() - 1) j = values.size() - 2;
  return hermite(values[j], values[j + 1], derivs[j], derivs[j + 1], step, xc - static_cast<double>(j));
}

Trajectory integrate(const Nonlinearity& w, const History& hist, const SimConfig& cfg) {
  if (!(cfg.h > 0.0)) throw std::invalid_argument("integrate: h must be positive");
  if (!(cfg.T > 0.0)) throw std::invalid_argument("integrate: T must be positive");
  if (cfg.step < 0.0) throw std::invalid_argument("integrate: step must be nonnegative");
  hist.check_covers(cfg.h);

  const double requested = cfg.step > 0.0 ? cfg.step : cfg.h / 256.0;
  const int n = std::max(1, static_cast<int>(std::lround(cfg.h / requested)));
  const double dt = cfg.h / n;
  const std::size_t steps = static_cast<std::size_t>(std::ceil(cfg.T / dt - 1e-9));

  Trajectory tr;
  tr.t0 = cfg.t0;
  tr.step = dt;
  tr.h = cfg.h;
  tr.steps_per_delay = n;
  tr.step_adjustment = cfg.step > 0.0 ? dt - cfg.step : 0.0;
  tr.values.resize(steps + 1);
  tr.derivs.resize(steps + 1);

  const double delta = cfg.delta;
  auto& xs = tr.values;
  auto& ds = tr.derivs;

  // Delayed state at grid index k (may be negative) and at the midpoint k + 1/2.
  auto delayed_grid = [&](long k) { return k >= 0 ? xs[static_cast<std::size_t>(k)] : hist(k * dt); };
  auto delayed_mid = [&](long k) {
    if (k < 0) return hist((k + 0.5) * dt);
    const std::size_t j = static_cast<std::size_t>(k);
    return 0.5 * (xs[j] + xs[j + 1]) + 0.125 * dt * (ds[j] - ds[j + 1]);
  };

  xs[0] = hist(0.0);
  for (std::size_t i = 0; i <= steps; ++i) {
    const long kd = static_cast<long>(i) - n;
    const double x = xs[i];
    const double k1 = -delta * x + w.eval(delayed_grid(kd));
    ds[i] = k1;
    if (!std::isfinite(x) || !std::isfinite(k1))
      throw std::runtime_error("integrate: non-finite value at t = " + std::to_string(tr.time(i)));
    if (i == steps) break;
    const double wm = w.eval(delayed_mid(kd));
    const double k2 = -delta * (x + 0.5 * dt * k1) + wm;
    const double k3 = -delta * (x + 0.5 * dt * k2) + wm;
    const double k4 = -delta * (x + dt * k3) + w.eval(delayed_grid(kd + 1));
    xs[i + 1] = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    const double dl = xs[i] - xs[i - 1];
    const double dr = xs[i + 1] - xs[i];
    ExtremumKind kind;
    if (dl > 0.0 && dr <= 0.0) {
      kind = ExtremumKind::Max;
    } else if (dl < 0.0 && dr >= 0.0) {
      kind = ExtremumKind::Min;
    } else {
      continue;
    }
    const auto [v, off] = parabola_vertex(xs[i - 1], xs[i], xs[i + 1]);
    tr.extrema.push_back({tr.time(i) + off * dt, v, kind});
  }
  return tr;
}

AsymptoticBounds asymptotic_bounds(const Trajectory& tr, double transient_fraction) {
  if (!(transient_fraction >= 0.0 && transient_fraction < 1.0))
    throw std::invalid_argument("asymptotic_bounds: transient fraction must lie in [0, 1)");
  AsymptoticBounds b;
  const double cut = tr.t0 + transient_fraction * (tr.t_end() - tr.t0);
  double m = INFINITY;
  double M = -INFINITY;
  int count = 0;
  for (const auto& e : tr.extrema) {
    if (e.t < cut) continue;
    ++count;
    m = std::min(m, e.value);
    M = std::max(M, e.value);
  }
  b.extrema_used = count;
  if (count >= 5) {
    b.m = m;
    b.M = M;
    return b;
  }
  b.low_confidence = true;
  m = INFINITY;
  M = -INFINITY;
  for (std::size_t i = 0; i < tr.values.size(); ++i) {
    if (tr.time(i) < cut) continue;
    m = std::min(m, tr.values[i]);
    M = std::max(M, tr.values[i]);
  }
  b.m = m;
  b.M = M;
  return b;
}

namespace {

// Extremum of the trajectory over [lo, hi], refined by a parabola at interior
// grid extrema.
std::pair<double, double> extremum_on(const Trajectory& tr, double lo, double hi, bool want_min) {
  const double sign = want_min ? 1.0 : -1.0;
  double best_v = sign * tr.at(lo);
  double best_t = lo;
  const double end_v = sign * tr.at(hi);
  if (end_v < best_v) {
    best_v = end_v;
    best_t = hi;
  }
  const long k0 = static_cast<long>(std::ceil((lo - tr.t0) / tr.step));
  const long k1 = static_cast<long>(std::floor((hi - tr.t0) / tr.step));
  const long last = static_cast<long>(tr.values.size()) - 1;
  for (long k = std::max(k0, 0L); k <= std::min(k1, last); ++k) {
    double v = sign * tr.values[static_cast<std::size_t>(k)];
    double t = tr.time(static_cast<std::size_t>(k));
    if (k > 0 && k < last) {
      const double ym = sign * tr.values[static_cast<std::size_t>(k - 1)];
      const double yp = sign * tr.values[static_cast<std::size_t>(k + 1)];
      if (ym >= v && yp >= v) {
        const auto [pv, off] = parabola_vertex(ym, v, yp);
        const double pt = t + off * tr.step;
        if (pt >= lo && pt <= hi) {
          v = pv;
          t = pt;
        }
      }
    }
    if (v < best_v) {
      best_v = v;
      best_t = t;
    }
  }
  return {sign * best_v, best_t};
}

}  // namespace

SimExtremum F_sim_detail(double z, const NormParams& np, int steps_per_delay) {
  SimExtremum out;
  if (z == 0.0) {
    out.value = 0.0;
    out.at_time = 0.0;
    out.y_at_zero = 0.0;
    return out;
  }
  const double h = np.h();
  const double start = t1(z, np);
  SimConfig cfg;
  cfg.h = h;
  cfg.delta = 1.0;
  cfg.t0 = start;
  cfg.T = h - start;
  cfg.step = h / steps_per_delay;
  const Trajectory tr = integrate(make_rational(np.a()), History::constant(z), cfg);
  out.y_at_zero = tr.at(0.0);
  out.zero_check_passed = std::abs(out.y_at_zero) <= 1e-9;
  const auto [v, t] = extremum_on(tr, 0.0, std::min(h, tr.t_end()), z > 0.0);
  out.value = v;
  out.at_time = t;
  return out;
}

double F_sim(double z, const NormParams& np, int steps_per_delay) {
  return F_sim_detail(z, np, steps_per_delay).value;
}

double F1_sim(double z, const NormParams& np, int steps_per_delay) {
  if (!(z >= 0.0)) throw std::domain_error("F1_sim: z must be nonnegative");
  if (z == 0.0) return 0.0;
  const double h = np.h();
  SimConfig cfg;
  cfg.h = h;
  cfg.delta = 1.0;
  cfg.t0 = 0.0;
  cfg.T = h;
  cfg.step = h / steps_per_delay;
  const Trajectory tr = integrate(make_rational(np.a()), History::ramp(r_eval(z, np.a())), cfg);
  return extremum_on(tr, 0.0, tr.t_end(), true).first;
}

std::string trajectory_csv(const Trajectory& tr) {
  std::string out = "t,x\n";
  char buf[64];
  for (std::size_t i = 0; i < tr.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", tr.time(i), tr.values[i]);
    out += buf;
  }
  return out;
}

}  // namespace ddestab
