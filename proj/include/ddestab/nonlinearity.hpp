#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>

namespace ddestab {

// A scalar nonlinearity w with hand-coded derivatives up to third order.
struct Nonlinearity {
  using Fn = std::function<double(double)>;

  std::string name;
  Fn eval;
  Fn d1;
  Fn d2;
  Fn d3;
  // Left edge of the interval where w is meaningful (e.g. -ln q for the
  // shifted Ricker map). Points at or below it are never sampled.
  double domain_lo = -std::numeric_limits<double>::infinity();
  double domain_hi = std::numeric_limits<double>::infinity();
  std::optional<double> critical_point;

  double operator()(double x) const { return eval(x); }
};

// f o g with derivatives by the chain rule (Faa di Bruno up to order 3).
Nonlinearity compose(const Nonlinearity& f, const Nonlinearity& g);

// Mobius map x -> a x / (1 + b x) on x > -1/b.
Nonlinearity make_rational(double a, double b = 1.0);

// w(x) = c x.
Nonlinearity make_linear(double c);

}  // namespace ddestab
