#pragma once

#include <cmath>
#include <limits>

namespace ddestab {
namespace dd {

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2; about 106 bits of mantissa.
struct DD {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DD() = default;
  constexpr DD(double x) : hi(x), lo(0.0) {}  // NOLINT: implicit by design
  constexpr DD(double h, double l) : hi(h), lo(l) {}

  explicit operator double() const { return hi + lo; }
};

namespace detail {

inline DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace detail

inline DD operator-(const DD& a) { return {-a.hi, -a.lo}; }

inline DD operator+(const DD& a, const DD& b) {
  DD s = detail::two_sum(a.hi, b.hi);
  DD t = detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return detail::quick_two_sum(s.hi, s.lo);
}

inline DD operator-(const DD& a, const DD& b) { return a + (-b); }

inline DD operator*(const DD& a, const DD& b) {
  DD p = detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return detail::quick_two_sum(p.hi, p.lo);
}

inline DD operator/(const DD& a, const DD& b) {
  const double q1 = a.hi / b.hi;
  DD r = a - b * DD(q1);
  const double q2 = r.hi / b.hi;
  r = r - b * DD(q2);
  const double q3 = r.hi / b.hi;
  return DD(q1) + DD(q2) + DD(q3);
}

inline DD& operator+=(DD& a, const DD& b) { return a = a + b; }
inline DD& operator-=(DD& a, const DD& b) { return a = a - b; }
inline DD& operator*=(DD& a, const DD& b) { return a = a * b; }
inline DD& operator/=(DD& a, const DD& b) { return a = a / b; }

inline bool operator<(const DD& a, const DD& b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(const DD& a, const DD& b) { return b < a; }
inline bool operator<=(const DD& a, const DD& b) { return !(b < a); }
inline bool operator>=(const DD& a, const DD& b) { return !(a < b); }
inline bool operator==(const DD& a, const DD& b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(const DD& a, const DD& b) { return !(a == b); }

inline DD abs(const DD& a) { return a.hi < 0.0 ? -a : a; }

inline DD sqrt(const DD& a) {
  if (a.hi <= 0.0) return DD(std::sqrt(a.hi));
  const double x = std::sqrt(a.hi);
  // One Newton step from the double root.
  DD r = a - detail::two_prod(x, x);
  return detail::quick_two_sum(x, r.hi / (2.0 * x));
}

inline DD ldexp(const DD& a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }

inline constexpr DD kDDLn2{0.6931471805599453, 2.3190468138462996e-17};

namespace detail {

// expm1(r) for |r| <= ~0.5: Taylor at r / 256, then eight doublings
// s -> s (s + 2), which keep the relative accuracy of the small quantity.
inline DD expm1_reduced(const DD& r) {
  const DD t = ldexp(r, -8);
  DD term = t;
  DD sum = t;
  for (int n = 2; n < 24; ++n) {
    term = term * t / DD(static_cast<double>(n));
    sum += term;
    if (std::abs(term.hi) < 1e-36 * std::abs(sum.hi)) break;
  }
  for (int i = 0; i < 8; ++i) sum = sum * (sum + DD(2.0));
  return sum;
}

}  // namespace detail

inline DD exp(const DD& a) {
  if (a.hi > 709.0) return DD(std::numeric_limits<double>::infinity());
  if (a.hi < -745.0) return DD(0.0);
  const double k = std::nearbyint(a.hi / kDDLn2.hi);
  const DD r = a - kDDLn2 * DD(k);
  return ldexp(DD(1.0) + detail::expm1_reduced(r), static_cast<int>(k));
}

inline DD expm1(const DD& a) {
  if (a.hi == 0.0) return a;
  if (std::abs(a.hi) < 0.5) return detail::expm1_reduced(a);
  return exp(a) - DD(1.0);
}

inline DD log(const DD& a) {
  if (a.hi <= 0.0) return DD(std::log(a.hi));
  DD x(std::log(a.hi));
  // Newton on exp(x) = a, quadratically convergent.
  for (int i = 0; i < 2; ++i) x = x + a * exp(-x) - DD(1.0);
  return x;
}

inline DD log1p(const DD& a) {
  if (a.hi == 0.0) return a;
  if (std::abs(a.hi) >= 0.5) return log(DD(1.0) + a);
  // Newton on expm1(x) = a keeps relative accuracy for small arguments.
  DD x(std::log1p(a.hi));
  for (int i = 0; i < 2; ++i) {
    const DD e = expm1(x);
    x = x + (a - e) / (DD(1.0) + e);
  }
  return x;
}

inline bool isfinite(const DD& a) { return std::isfinite(a.hi); }
inline bool isnan(const DD& a) { return std::isnan(a.hi); }

inline double to_double(double x) { return x; }
inline double to_double(const DD& x) { return x.hi + x.lo; }

}  // namespace dd

// Math functions live in ddestab::dd and are found by argument-dependent
// lookup, so templated code reads `using std::exp; exp(x)` for either type.
using dd::DD;
using dd::to_double;

}  // namespace ddestab
