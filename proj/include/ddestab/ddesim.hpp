#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "ddestab/nonlinearity.hpp"
#include "ddestab/params.hpp"

namespace ddestab {

enum class HistoryKind { Constant, Ramp, Sampled, Function };

// Initial segment phi(s), s in [-h, 0], measured from the start time.
class History {
 public:
  static History constant(double z);
  // phi(s) = (1 - e^{-s}) rz.
  static History ramp(double rz);
  // Piecewise cubic through (s_i, v_i); s strictly increasing and covering [-h, 0].
  static History sampled(std::vector<double> s, std::vector<double> v);
  static History function(std::function<double(double)> fn);

  HistoryKind kind() const { return kind_; }
  double operator()(double s) const;
  // Throws std::invalid_argument unless a sampled history covers [-h, 0].
  void check_covers(double h) const;

 private:
  HistoryKind kind_ = HistoryKind::Constant;
  double z_ = 0.0;
  std::vector<double> s_;
  std::vector<double> v_;
  std::vector<double> slope_;
  std::function<double(double)> fn_;
};

struct SimConfig {
  double h = 1.0;
  double delta = 1.0;
  double T = 10.0;     // integrate over [t0, t0 + T]
  double step = 0.0;   // 0 selects h / 256; otherwise rounded so h / step is an integer
  double t0 = 0.0;
};

enum class ExtremumKind { Min, Max };

struct Extremum {
  double t;
  double value;
  ExtremumKind kind;
};

class Trajectory {
 public:
  double t0 = 0.0;
  double step = 0.0;
  double h = 0.0;
  int steps_per_delay = 0;
  // step actually used minus step requested
  double step_adjustment = 0.0;
  std::vector<double> values;
  // right-hand side at each grid point
  std::vector<double> derivs;
  // local extrema of the whole run, parabola-refined, in time order
  std::vector<Extremum> extrema;

  double time(std::size_t i) const { return t0 + static_cast<double>(i) * step; }
  double t_end() const { return time(values.size() - 1); }
  // Cubic Hermite interpolant of the stored solution; t in [t0, t_end].
  double at(double t) const;
};

// Method of steps for x'(t) = -delta x(t) + w(x(t - h)) with fixed-step RK4.
// The step divides h, so every delay interval starts on a grid point and RK4
// restarts at the derivative breaks t0 + k h. Throws std::runtime_error on a
// non-finite value.
Trajectory integrate(const Nonlinearity& w, const History& hist, const SimConfig& cfg);

struct AsymptoticBounds {
  double m = NAN;
  double M = NAN;
  bool low_confidence = false;
  int extrema_used = 0;
};

// liminf / limsup estimates from the extrema after t0 + fraction * (t_end - t0).
// Falls back to the tail min/max (flagged low confidence) with fewer than five
// extrema.
AsymptoticBounds asymptotic_bounds(const Trajectory& tr, double transient_fraction = 0.5);

struct SimExtremum {
  double value = NAN;
  double at_time = NAN;
  double y_at_zero = NAN;  // F construction forces y(0) = 0
  bool zero_check_passed = true;
};

// Brute-force F: integrate y' = -y + r(y(t - h)) from t1(z) with the constant
// segment z, then take the min (z > 0) or max (z < 0) of y on [0, h].
SimExtremum F_sim_detail(double z, const NormParams& np, int steps_per_delay = 2048);
double F_sim(double z, const NormParams& np, int steps_per_delay = 2048);
// Brute-force F1: ramp segment (1 - e^{-s}) r(z) on [-h, 0], min of y on [0, h].
double F1_sim(double z, const NormParams& np, int steps_per_delay = 2048);

// CSV "t,x" with %.17g values.
std::string trajectory_csv(const Trajectory& tr);

}  // namespace ddestab
