#pragma once

#include <cmath>
#include <utility>

namespace ddestab {

struct RootResult {
  double x = NAN;
  double fx = NAN;
  double lo = NAN;
  double hi = NAN;
  int iterations = 0;
  bool bracketed = false;
};

// Bisection safeguarded with an Illinois-modified secant step. `f(lo)` and
// `f(hi)` must differ in sign. Stops once the bracket is narrower than
// `xtol` (zero runs until the bracket can no longer be split) or an exact
// zero is hit. The returned x is the endpoint with the smaller |f|.
template <class Fn>
RootResult bracketed_root(Fn&& f, double lo, double hi, double xtol = 0.0, int max_iter = 400) {
  RootResult res;
  double flo = f(lo);
  double fhi = f(hi);
  res.lo = lo;
  res.hi = hi;
  if (flo == 0.0) {
    res = {lo, 0.0, lo, lo, 0, true};
    return res;
  }
  if (fhi == 0.0) {
    res = {hi, 0.0, hi, hi, 0, true};
    return res;
  }
  if (!(std::signbit(flo) != std::signbit(fhi)) || std::isnan(flo) || std::isnan(fhi)) {
    res.x = std::abs(flo) < std::abs(fhi) ? lo : hi;
    res.fx = std::abs(flo) < std::abs(fhi) ? flo : fhi;
    return res;
  }
  res.bracketed = true;

  int side = 0;  // which end was retained on the previous step
  int it = 0;
  for (; it < max_iter; ++it) {
    const double width = hi - lo;
    if (std::abs(width) <= xtol) break;

    double x;
    if (it % 3 == 2) {
      x = lo + 0.5 * width;
    } else {
      x = (lo * fhi - hi * flo) / (fhi - flo);
      if (!(x > std::min(lo, hi) && x < std::max(lo, hi))) x = lo + 0.5 * width;
    }
    if (x == lo || x == hi) {
      x = lo + 0.5 * width;
      if (x == lo || x == hi) break;
    }
    const double fx = f(x);
    if (fx == 0.0) {
      lo = hi = x;
      flo = fhi = 0.0;
      ++it;
      break;
    }
    if (std::signbit(fx) == std::signbit(flo)) {
      lo = x;
      flo = fx;
      if (side == -1) fhi *= 0.5;
      side = -1;
    } else {
      hi = x;
      fhi = fx;
      if (side == 1) flo *= 0.5;
      side = 1;
    }
  }
  res.iterations = it;
  res.lo = std::min(lo, hi);
  res.hi = std::max(lo, hi);
  // flo/fhi may carry Illinois scaling; re-evaluate the kept endpoint.
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (std::abs(f_lo) <= std::abs(f_hi)) {
    res.x = lo;
    res.fx = f_lo;
  } else {
    res.x = hi;
    res.fx = f_hi;
  }
  return res;
}

}  // namespace ddestab
