#include "ddestab/nonlinearity.hpp"

#include <stdexcept>

namespace ddestab {

Nonlinearity compose(const Nonlinearity& f, const Nonlinearity& g) {
  Nonlinearity h;
  h.name = f.name + "o" + g.name;
  h.eval = [f, g](double x) { return f.eval(g.eval(x)); };
  h.d1 = [f, g](double x) { return f.d1(g.eval(x)) * g.d1(x); };
  h.d2 = [f, g](double x) {
    const double y = g.eval(x);
    const double g1 = g.d1(x);
    return f.d2(y) * g1 * g1 + f.d1(y) * g.d2(x);
  };
  h.d3 = [f, g](double x) {
    const double y = g.eval(x);
    const double g1 = g.d1(x);
    const double g2 = g.d2(x);
    return f.d3(y) * g1 * g1 * g1 + 3.0 * f.d2(y) * g1 * g2 + f.d1(y) * g.d3(x);
  };
  h.domain_lo = g.domain_lo;
  h.domain_hi = g.domain_hi;
  return h;
}

Nonlinearity make_rational(double a, double b) {
  if (!(b > 0.0)) throw std::invalid_argument("make_rational: b must be positive");
  Nonlinearity w;
  w.name = "rational";
  w.eval = [a, b](double x) { return a * x / (1.0 + b * x); };
  w.d1 = [a, b](double x) {
    const double d = 1.0 + b * x;
    return a / (d * d);
  };
  w.d2 = [a, b](double x) {
    const double d = 1.0 + b * x;
    return -2.0 * a * b / (d * d * d);
  };
  w.d3 = [a, b](double x) {
    const double d = 1.0 + b * x;
    return 6.0 * a * b * b / (d * d * d * d);
  };
  w.domain_lo = -1.0 / b;
  return w;
}

Nonlinearity make_linear(double c) {
  Nonlinearity w;
  w.name = "linear";
  w.eval = [c](double x) { return c * x; };
  w.d1 = [c](double) { return c; };
  w.d2 = [](double) { return 0.0; };
  w.d3 = [](double) { return 0.0; };
  return w;
}

}  // namespace ddestab
