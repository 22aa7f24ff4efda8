#include "ddestab/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>

#include "ddestab/ddouble.hpp"
#include "ddestab/io.hpp"
#include "ddestab/onedmaps.hpp"
#include "ddestab/ratmaps.hpp"

namespace ddestab {

namespace {

using Pt = std::array<double, 3>;

struct Eval {
  double lhs = NAN;
  double rhs = NAN;
  double margin = NAN;
  double normalized = NAN;  // set by lemmas with order-normalized margins
};

// x holds the outer coordinates followed by the inner one.
using EvalFn = std::function<Eval(const Pt& x, bool extended)>;

enum class Domain { None, D, DStar, S, DShortDelay, Linear };

struct InnerAxis {
  bool present = false;
  bool lo_open = false;
  bool hi_open = false;
  // [lo, hi] for the given outer point.
  std::function<std::pair<double, double>(const Pt&)> range;
};

struct LemmaDef {
  std::string id;
  std::string statement;
  std::string grid;
  std::vector<std::string> coords;
  bool strict = true;
  bool normalized = false;
  bool has_extended = false;
  Domain domain = Domain::None;
  // Custom outer grid when domain == None.
  std::function<std::vector<Pt>(int n)> outer;
  InnerAxis inner;
  EvalFn eval;
};

constexpr double kTightMargin = 1e-6;

bool in_domain(Domain d, double theta, double mu) {
  switch (d) {
    case Domain::D:
      return in_domain_D(theta, mu);
    case Domain::DStar:
      return in_domain_Dstar(theta, mu);
    case Domain::S:
      return in_domain_S(theta, mu) && theta <= 1.0 - 1e-6;
    case Domain::DShortDelay:
      return in_domain_D(theta, mu) && theta >= std::exp(-1.0);
    case Domain::Linear:
      return theta > pi_curve(1, mu);
    case Domain::None:
      return false;
  }
  return false;
}

// Nested dyadic (theta, mu) grid filtered by membership.
std::vector<Pt> domain_grid(Domain d, int n) {
  std::vector<Pt> pts;
  for (int i = 1; i < n; ++i) {
    const double theta = static_cast<double>(i) / n;
    for (int j = 1; j < n; ++j) {
      const double mu = static_cast<double>(j) / n;
      if (in_domain(d, theta, mu)) pts.push_back({theta, mu, 0.0});
    }
  }
  return pts;
}

std::vector<double> axis_points(double lo, double hi, bool lo_open, bool hi_open, int n) {
  std::vector<double> v;
  for (int k = lo_open ? 1 : 0; k <= (hi_open ? n - 1 : n); ++k) v.push_back(lo + (hi - lo) * k / n);
  return v;
}

NormParams np_of(const Pt& x) { return NormParams(-1.0 / x[1], x[0]); }

template <class T>
T gamma_t(T a, T theta) {
  using std::log;
  const T lt = log(theta);
  return a * a * a * alpha_t(a, theta) * (T(1.0) - theta + lt) / (T(2.0) - theta + lt);
}

template <class T>
T J_t(T r, T a, T theta) {
  using std::expm1;
  using std::sqrt;
  const T nu = -theta / a;
  const T N = sqrt(T(1.0) + T(4.0) * r);
  const T em = expm1(-nu * N);  // e^{-x} - 1
  return -N * (T(2.0) + em) / em;
}

template <class T>
T J_tangent_t(T r, T a, T theta) {
  using std::exp;
  using std::expm1;
  const T l = exp(theta / a);
  const T one_minus_l = -expm1(theta / a);
  const T j0 = (T(1.0) + l) / one_minus_l;
  const T j1 = T(2.0) * j0 + T(4.0) * theta * l / (a * one_minus_l * one_minus_l);
  return j0 + j1 * r;
}

Eval make_eval(double lhs, double rhs, double margin) { return {lhs, rhs, margin, NAN}; }

// ---- lemma table ----------------------------------------------------------

std::vector<LemmaDef> build_lemmas() {
  std::vector<LemmaDef> L;

  {
    LemmaDef d;
    d.id = "albet";
    d.statement = "alpha > 0, beta > 0 and T = (a^2 - a) beta (1 - theta) + alpha - (1 - theta) >= 0 on D";
    d.grid = "D";
    d.coords = {"theta", "mu"};
    d.strict = false;
    d.has_extended = true;
    d.domain = Domain::D;
    d.eval = [](const Pt& x, bool ext) {
      const double a = -1.0 / x[1];
      const double th = x[0];
      if (ext) {
        const DD A(a), TH(th);
        const DD al = alpha_t(A, TH), be = beta_t(A, TH);
        const DD T = (A * A - A) * be * (DD(1.0) - TH) + al - (DD(1.0) - TH);
        const double m = std::min({to_double(al), to_double(be), to_double(T)});
        return make_eval(m, 0.0, m);
      }
      const double al = alpha_t(a, th), be = beta_t(a, th);
      const double T = (a * a - a) * be * (1.0 - th) + al - (1.0 - th);
      const double m = std::min({al, be, T});
      return make_eval(m, 0.0, m);
    };
    L.push_back(d);
  }
  {
    LemmaDef d;
    d.id = "albeta";
    d.statement = "a alpha / (1 - a beta) > -1 on D";
    d.grid = "D";
    d.coords = {"theta", "mu"};
    d.has_extended = true;
    d.domain = Domain::D;
    d.eval = [](const Pt& x, bool ext) {
      const double a = -1.0 / x[1];
      const double th = x[0];
      if (ext) {
        const DD A(a), TH(th);
        const DD v = A * alpha_t(A, TH) / (DD(1.0) - A * beta_t(A, TH));
        return make_eval(to_double(v), -1.0, to_double(v + DD(1.0)));
      }
      const double v = a * alpha_t(a, th) / (1.0 - a * beta_t(a, th));
      return make_eval(v, -1.0, v + 1.0);
    };
    L.push_back(d);
  }
  {
    LemmaDef d;
    d.id = "dom";
    d.statement = "gamma < 1 on S";
    d.grid = "S, theta clamped to [0.8, 1 - 1e-6]";
    d.coords = {"theta", "mu"};
    d.has_extended = true;
    d.domain = Domain::S;
    d.eval = [](const Pt& x, bool ext) {
      const double a = -1.0 / x[1];
      if (ext) {
        const DD g = gamma_t(DD(a), DD(x[0]));
        return make_eval(to_double(g), 1.0, to_double(DD(1.0) - g));
      }
      const double g = gamma_t(a, x[0]);
      return make_eval(g, 1.0, 1.0 - g);
    };
    L.push_back(d);
  }
  {
    LemmaDef d;
    d.id = "jcal_tangent";
    d.statement = "J(r) <= J(0) + J'(0) r for r in (-1/4, 5] on D";
    d.grid = "D x r in (-1/4, 5]";
    d.coords = {"theta", "mu", "r"};
    d.strict = false;
    d.has_extended = true;
    d.domain = Domain::D;
    d.inner = {true, true, false, [](const Pt&) { return std::pair{-0.25, 5.0}; }};
    d.eval = [](const Pt& x, bool ext) {
      const double a = -1.0 / x[1];
      if (ext) {
        const DD A(a), TH(x[0]), R(x[2]);
        const DD t = J_tangent_t(R, A, TH), j = J_t(R, A, TH);
        return make_eval(to_double(t), to_double(j), to_double(t - j));
      }
      const double t = J_tangent_t(x[2], a, x[0]), j = J_t(x[2], a, x[0]);
      return make_eval(t, j, t - j);
    };
    L.push_back(d);
  }
  {
    LemmaDef d;
    d.id = "jcal_concavity";
    d.statement = "J''(r) < 0 for r in (-1/4, 5] on D";
    d.grid = "D x r in (-1/4, 5]";
    d.coords = {"theta", "mu", "r"};
    d.domain = Domain::D;
    d.inner = {true, true, false, [](const Pt&) { return std::pair{-0.25, 5.0}; }};
    d.eval = [](const Pt& x, bool) {
      const double j2 = J_second(x[2], np_of(x));
      return make_eval(j2, 0.0, -j2);
    };
    L.push_back(d);
  }
  {
    LemmaDef d;
    d.id = "leform1";
    d.statement = "calF(r) > R(r) for r in [a*, 0) on D";
    d.grid = "D x r in [a*, 0)";
    d.coords = {"theta", "mu", "r"};
    d.has_extended = true;
    d.domain = Domain::D;
    d.inner = {true, false, true, [](const Pt& x) { return std::pair{np_of(x).a_star(), 0.0}; }};
    d.eval = [](const Pt& x, bool ext) {
      const NormParams np = np_of(x);
      const double r = x[2];
      if (ext) {
        const DD A(np.a()), TH(np.theta());
        const DD f = calF_dd(r, np);
        const DD R = R_eval_t(DD(r), alpha_t(A, TH), beta_t(A, TH));
        return make_eval(to_double(f), to_double(R), to_double(f - R));
      }
      const MapSolve s = calF(r, np);
      const double R = R_eval(r, coeffs(np));
      return make_eval(s.ok() ? s.value : NAN, R, s.ok() ? s.value - R : NAN);
    };
    L.push_back(d);
  }
  {
    LemmaDef d;
    d.id = "plyus";
    d.statement = "calF(r) < R(r) for r in (0, 1/beta) on D";
    d.grid = "D x r in (0, 1/beta)";
    d.coords = {"theta", "mu", "r"};
    d.has_extended = true;
    d.domain = Domain::D;
    d.inner = {true, true, true, [](const Pt& x) { return std::pair{0.0, 1.0 / coeffs(np_of(x)).beta}; }};
    d.eval = [](const Pt& x, bool ext) {
      const NormParams np = np_of(x);
      const double r = x[2];
      if (ext) {
        const DD A(np.a()), TH(np.theta());
        const DD f = calF_dd(r, np);
        const DD R = R_eval_t(DD(r), alpha_t(A, TH), beta_t(A, TH));
        return make_eval(to_double(f), to_double(R), to_double(R - f));
      }
      const MapSolve s = calF(r, np);
      const double R = R_eval(r, coeffs(np));
      return make_eval(s.ok() ? s.value : NAN, R, s.ok() ? R - s.value : NAN);
    };
    L.push_back(d);
  }
  {
    LemmaDef d;
    d.id = "leform2";
    d.statement = "calF1(r) > R(r) for r in (a, a*] on D*";
    d.grid = "D* x r in (a, a*]";
    d.coords = {"theta", "mu", "r"};
    d.has_extended = true;
    d.domain = Domain::DStar;
    d.inner = {true, true, false, [](const Pt& x) {
                 const NormParams np = np_of(x);
                 return std::pair{np.a(), np.a_star()};
               }};
    d.eval = [](const Pt& x, bool ext) {
      const NormParams np = np_of(x);
      const double r = x[2];
      if (ext) {
        const DD A(np.a()), TH(np.theta());
        const DD f = calF1_dd(r, np);
        const DD R = R_eval_t(DD(r), alpha_t(A, TH), beta_t(A, TH));
        return make_eval(to_double(f), to_double(R), to_double(f - R));
      }
      const MapSolve s = calF1(r, np);
      const double R = R_eval(r, coeffs(np));
      return make_eval(s.ok() ? s.value : NAN, R, s.ok() ? s.value - R : NAN);
    };
    L.push_back(d);
  }
  {
    LemmaDef d;
    d.id = "lele";
    d.statement = "S(a*) = dQ/dr (a*) > 0 on D*";
    d.grid = "D*";
    d.coords = {"theta", "mu"};
    d.has_extended = true;
    d.domain = Domain::DStar;
    d.eval = [](const Pt& x, bool ext) {
      const NormParams np = np_of(x);
      if (ext) {
        const DD A(np.a()), TH(np.theta());
        const DD as = A + TH / (DD(1.0) - TH);
        const DD s = S_poly_t(as, A, TH, alpha_t(A, TH), beta_t(A, TH));
        return make_eval(to_double(s), 0.0, to_double(s));
      }
      const double s = S_poly(np.a_star(), np);
      return make_eval(s, 0.0, s);
    };
    L.push_back(d);
  }
  {
    LemmaDef d;
    d.id = "leleka";
    d.statement = "S(r) > 0 for r in [a, a*] on D*";
    d.grid = "D* x r in [a, a*]";
    d.coords = {"theta", "mu", "r"};
    d.has_extended = true;
    d.domain = Domain::DStar;
    d.inner = {true, false, false, [](const Pt& x) {
                 const NormParams np = np_of(x);
                 return std::pair{np.a(), np.a_star()};
               }};
    d.eval = [](const Pt& x, bool ext) {
      const NormParams np = np_of(x);
      if (ext) {
        const DD A(np.a()), TH(np.theta());
        const DD s = S_poly_t(DD(x[2]), A, TH, alpha_t(A, TH), beta_t(A, TH));
        return make_eval(to_double(s), 0.0, to_double(s));
      }
      const double s = S_poly(x[2], np);
      return make_eval(s, 0.0, s);
    };
    L.push_back(d);
  }
  {
    LemmaDef d;
    d.id = "funcrr2";
    d.statement = "calF1(r) > R2(r) for r in (a, 0) on D with h <= 1";
    d.grid = "D with theta >= exp(-1) x r in (a, 0)";
    d.coords = {"theta", "mu", "r"};
    d.has_extended = true;
    d.domain = Domain::DShortDelay;
    d.inner = {true, true, true, [](const Pt& x) { return std::pair{np_of(x).a(), 0.0}; }};
    d.eval = [](const Pt& x, bool ext) {
      const NormParams np = np_of(x);
      const double r = x[2];
      if (ext) {
        const DD f = calF1_dd(r, np);
        const DD R2 = R2_eval_t(DD(r), DD(np.a()), DD(np.theta()));
        return make_eval(to_double(f), to_double(R2), to_double(f - R2));
      }
      const MapSolve s = calF1(r, np);
      const double R2 = R2_eval(r, np);
      return make_eval(s.ok() ? s.value : NAN, R2, s.ok() ? s.value - R2 : NAN);
    };
    L.push_back(d);
  }
  {
    LemmaDef d;
    d.id = "lele2";
    d.statement = "r(R2(a)) beta < 1 and R2(a) > -1 with a = k/q, theta = 1 + q";
    d.grid = "q in [-0.2, 0) x k in [1, 1.5], double-double arithmetic";
    d.coords = {"q", "k"};
    d.outer = [](int n) {
      std::vector<Pt> pts;
      for (int i = 0; i < n; ++i) pts.push_back({-0.2 + 0.2 * i / n, 0.0, 0.0});
      return pts;
    };
    d.inner = {true, false, false, [](const Pt&) { return std::pair{1.0, 1.5}; }};
    d.eval = [](const Pt& x, bool) {
      const DD q(x[0]), k(x[1]);
      const DD a = k / q;
      const DD th = DD(1.0) + q;
      const DD R2 = R2_eval_t(a, a, th);
      const DD rR2 = a * R2 / (DD(1.0) + R2);
      const DD lhs = rR2 * beta_t(a, th);
      const double m = std::min(to_double(DD(1.0) - lhs), to_double(R2 + DD(1.0)));
      return make_eval(to_double(lhs), 1.0, m);
    };
    L.push_back(d);
  }
  {
    LemmaDef d;
    d.id = "expo_bounds";
    d.statement = "1 + x < e^x < 1 + x + x^2/2 for x < 0; e^x > 1 + x + x^2/2 + x^3/6 for x > 0";
    d.grid = "x in [-5, 5] without 0";
    d.coords = {"x"};
    d.normalized = true;
    d.has_extended = true;
    d.outer = [](int) { return std::vector<Pt>{{0.0, 0.0, 0.0}}; };
    d.inner = {true, false, false, [](const Pt&) { return std::pair{-5.0, 5.0}; }};
    d.eval = [](const Pt& p, bool ext) {
      const double x = p[0];
      if (x == 0.0) return make_eval(1.0, 1.0, NAN);  // excluded point, filtered by caller
      // Both sides touch at x = 0 to order 2, 3 (x < 0) and 4 (x > 0); the
      // normalized margin rescales by (5/|x|)^order.
      const double s = 5.0 / std::abs(x);
      Eval e;
      if (ext) {
        const DD X(x);
        const DD ex = exp(X);
        if (x < 0.0) {
          const DD m1 = ex - (DD(1.0) + X);
          const DD m2 = DD(1.0) + X + X * X / DD(2.0) - ex;
          e.lhs = to_double(ex);
          e.rhs = to_double(DD(1.0) + X);
          e.margin = std::min(to_double(m1), to_double(m2));
          e.normalized = std::min(to_double(m1) * s * s, to_double(m2) * s * s * s);
        } else {
          const DD poly = DD(1.0) + X + X * X / DD(2.0) + X * X * X / DD(6.0);
          e.lhs = to_double(ex);
          e.rhs = to_double(poly);
          e.margin = to_double(ex - poly);
          e.normalized = e.margin * s * s * s * s;
        }
        return e;
      }
      const double ex = std::exp(x);
      if (x < 0.0) {
        const double m1 = std::expm1(x) - x;
        const double m2 = x + 0.5 * x * x - std::expm1(x);
        e.lhs = ex;
        e.rhs = 1.0 + x;
        e.margin = std::min(m1, m2);
        e.normalized = std::min(m1 * s * s, m2 * s * s * s);
      } else {
        const double poly = x + 0.5 * x * x + x * x * x / 6.0;
        e.lhs = ex;
        e.rhs = 1.0 + poly;
        e.margin = std::expm1(x) - poly;
        e.normalized = e.margin * s * s * s * s;
      }
      return e;
    };
    L.push_back(d);
  }
  {
    LemmaDef d;
    d.id = "r303";
    d.statement = "ln(1 + q) > q - 0.5 q^2 + 0.4 q^3 for q in [-0.2, 0)";
    d.grid = "q in [-0.2, 0)";
    d.coords = {"q"};
    d.normalized = true;
    d.has_extended = true;
    d.outer = [](int) { return std::vector<Pt>{{0.0, 0.0, 0.0}}; };
    d.inner = {true, false, true, [](const Pt&) { return std::pair{-0.2, 0.0}; }};
    d.eval = [](const Pt& p, bool ext) {
      const double q = p[0];
      // Contact of order 3 at q = 0; normalized by (-0.2 / q)^3.
      const double s = -0.2 / q;
      Eval e;
      if (ext) {
        const DD Q(q);
        const DD lhs = log1p(Q);
        const DD rhs = Q - DD(0.5) * Q * Q + DD(0.4) * Q * Q * Q;
        e.lhs = to_double(lhs);
        e.rhs = to_double(rhs);
        e.margin = to_double(cubic_log_gap(Q));
      } else {
        e.lhs = std::log1p(q);
        e.rhs = q - 0.5 * q * q + 0.4 * q * q * q;
        e.margin = cubic_log_gap(q);
      }
      e.normalized = e.margin * s * s * s;
      return e;
    };
    L.push_back(d);
  }
  {
    LemmaDef d;
    d.id = "gsslemma_schwarz";
    d.statement = "S chi(x) < 0 for x in (-0.9, 10) where the linear criterion holds";
    d.grid = "linear region x x in (-0.9, 10)";
    d.coords = {"theta", "mu", "x"};
    d.domain = Domain::Linear;
    d.inner = {true, true, true, [](const Pt&) { return std::pair{-0.9, 10.0}; }};
    d.eval = [](const Pt& x, bool) {
      const double s = chi_schwarzian(x[2], np_of(x));
      return make_eval(s, 0.0, -s);
    };
    L.push_back(d);
  }
  return L;
}

const std::vector<LemmaDef>& lemma_table() {
  static const std::vector<LemmaDef> table = build_lemmas();
  return table;
}

bool violates(double margin, bool strict) { return std::isnan(margin) || margin < 0.0 || (strict && margin == 0.0); }

struct Partial {
  long long count = 0;
  long long extended = 0;
  double min_margin = INFINITY;
  double raw_min = INFINITY;
  Pt argmin{NAN, NAN, NAN};
  long long violation_count = 0;
  std::vector<Violation> violations;
};

}  // namespace

const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& d : lemma_table()) v.push_back(d.id);
    return v;
  }();
  return ids;
}

LemmaReport verify_lemma(const std::string& id, int resolution, Exec exec) {
  if (resolution < 2) throw std::invalid_argument("verify_lemma: resolution must be at least 2");
  const auto& table = lemma_table();
  const auto it = std::find_if(table.begin(), table.end(), [&](const LemmaDef& d) { return d.id == id; });
  if (it == table.end()) throw std::invalid_argument("verify_lemma: unknown lemma id '" + id + "'");
  const LemmaDef& def = *it;
  const int n = resolution;

  const std::vector<Pt> outer = def.domain == Domain::None ? def.outer(n) : domain_grid(def.domain, n);
  // Outer coordinates occupy the leading slots; 1-D lemmas have only the inner axis.
  const std::size_t outer_dims = def.coords.size() - (def.inner.present ? 1 : 0);

  std::vector<Partial> parts(outer.size());
  for_each_index(
      outer.size(),
      [&](std::size_t idx) {
        Partial& part = parts[idx];
        const Pt& o = outer[idx];
        std::vector<double> inner_vals{0.0};
        if (def.inner.present) {
          std::pair<double, double> range;
          try {
            range = def.inner.range(o);
          } catch (const std::exception&) {
            range = {NAN, NAN};
          }
          inner_vals = axis_points(range.first, range.second, def.inner.lo_open, def.inner.hi_open, n);
        }
        for (double v : inner_vals) {
          Pt x = o;
          if (def.inner.present) x[outer_dims] = v;
          if (def.id == "expo_bounds" && x[0] == 0.0) continue;
          Eval e;
          try {
            e = def.eval(x, false);
            if (def.has_extended && std::abs(e.margin) < kTightMargin) {
              e = def.eval(x, true);
              ++part.extended;
            }
          } catch (const std::exception&) {
            e = Eval{};
          }
          ++part.count;
          const double reported = def.normalized ? e.normalized : e.margin;
          if (std::isnan(reported) || reported < part.min_margin) {
            if (!(std::isnan(part.min_margin))) {
              part.min_margin = reported;
              part.argmin = x;
            }
          }
          if (std::isnan(e.margin) || e.margin < part.raw_min) part.raw_min = e.margin;
          if (violates(e.margin, def.strict)) {
            ++part.violation_count;
            if (part.violations.size() < kMaxStoredViolations) {
              Violation viol;
              viol.point.assign(x.begin(), x.begin() + static_cast<long>(def.coords.size()));
              viol.lhs = e.lhs;
              viol.rhs = e.rhs;
              viol.margin = e.margin;
              part.violations.push_back(std::move(viol));
            }
          }
        }
      },
      exec);

  LemmaReport rep;
  rep.lemma_id = def.id;
  rep.statement = def.statement;
  rep.grid_desc = def.grid;
  rep.coordinates = def.coords;
  rep.resolution = n;
  rep.strict = def.strict;
  rep.margin_kind = def.normalized ? "order_normalized" : "raw";
  Pt arg{NAN, NAN, NAN};
  for (const Partial& p : parts) {
    rep.points_checked += p.count;
    rep.extended_precision_points += p.extended;
    rep.violation_count += p.violation_count;
    if (!std::isnan(rep.min_margin) && (std::isnan(p.min_margin) || p.min_margin < rep.min_margin)) {
      rep.min_margin = p.min_margin;
      arg = p.argmin;
    }
    if (!std::isnan(rep.raw_min_margin) && (std::isnan(p.raw_min) || p.raw_min < rep.raw_min_margin))
      rep.raw_min_margin = p.raw_min;
    for (const auto& v : p.violations) {
      if (rep.violations.size() >= kMaxStoredViolations) break;
      rep.violations.push_back(v);
    }
  }
  rep.argmin.assign(arg.begin(), arg.begin() + static_cast<long>(def.coords.size()));
  return rep;
}

// ---- certificate ------------------------------------------------------------

namespace {

void add_fact(Certificate& c, std::string statement, double value, bool holds) {
  Fact f{std::move(statement), value, holds};
  if (!holds) c.failing.push_back(f);
  c.chain.push_back(std::move(f));
}

double spot_min(const std::vector<double>& rs, const std::function<double(double)>& margin) {
  double m = INFINITY;
  for (double r : rs) {
    double v;
    try {
      v = margin(r);
    } catch (const std::exception&) {
      v = NAN;
    }
    if (std::isnan(v)) return NAN;
    m = std::min(m, v);
  }
  return m;
}

}  // namespace

Certificate certificate(const NormParams& np) {
  Certificate cert;
  cert.region = classify(np);
  const double a = np.a();
  const double theta = np.theta();

  if (!cert.region.certified()) {
    if (cert.region.reason == RegionReason::CriterionFails) {
      cert.failing.push_back({"theta <= -a ln((a^2 - a)/(a^2 + 1))", criterion_norm_margin(np), false});
    } else {
      cert.failing.push_back({"-theta/a > -(a + 1)/(a^2 + 1) fails while a >= -1", linear_criterion_margin(np), false});
    }
    return cert;
  }

  add_fact(cert, "-theta/a > ln((a^2 - a)/(a^2 + 1))", criterion_norm_margin(np), criterion_norm(np));

  if (cert.region.tag == Region::GloballyStableLinear) {
    add_fact(cert, "-theta/a > -(a + 1)/(a^2 + 1)", linear_criterion_margin(np), linear_criterion(np));
    const double s0 = chi_slope0(np);
    add_fact(cert, "chi'(0) = (1 - theta) a^2 / (a - theta) in (-1, 0)", s0, s0 > -1.0 && s0 < 0.0);
    double max_s = -INFINITY;
    double max_d = -INFINITY;
    for (int k = 1; k < 256; ++k) {
      const double x = -0.9 + 10.9 * k / 256.0;
      max_s = std::max(max_s, chi_schwarzian(x, np));
      max_d = std::max(max_d, chi_d1(x, np));
    }
    add_fact(cert, "max S chi(x) < 0 on sampled x in (-0.9, 10)", max_s, max_s < 0.0);
    add_fact(cert, "chi strictly decreasing (max chi'(x) < 0 on samples)", max_d, max_d < 0.0);
    return cert;
  }

  const Coeffs c = coeffs(np);
  if (cert.region.tag == Region::GloballyStableDStar) {
    const double slope = a * c.alpha;
    add_fact(cert, "R'(0) = a alpha in (-1, 0)", slope, slope > -1.0 && slope < 0.0);
    add_fact(cert, "alpha > 0 and beta > 0", std::min(c.alpha, c.beta), c.alpha > 0.0 && c.beta > 0.0);
    const double Ra = R_eval(a, c);
    add_fact(cert, "m > R(M) > R(a) > -1", Ra, Ra > -1.0);

    std::vector<double> rs;
    for (int k = 0; k < 16; ++k) rs.push_back(c.a_star * (1.0 - k / 16.0));
    const double m1 = spot_min(rs, [&](double r) { return calF(r, np).value - R_eval(r, c); });
    add_fact(cert, "calF(r) > R(r) on sampled r in [a*, 0)", m1, m1 > 0.0);
    rs.clear();
    for (int k = 1; k < 16; ++k) rs.push_back(k / (16.0 * c.beta));
    const double m2 = spot_min(rs, [&](double r) { return R_eval(r, c) - calF(r, np).value; });
    add_fact(cert, "calF(r) < R(r) on sampled r in (0, 1/beta)", m2, m2 > 0.0);
    rs.clear();
    for (int k = 1; k <= 16; ++k) rs.push_back(a + (c.a_star - a) * k / 16.0);
    const double m3 = spot_min(rs, [&](double r) { return calF1(r, np).value - R_eval(r, c); });
    add_fact(cert, "calF1(r) > R(r) on sampled r in (a, a*]", m3, m3 > 0.0);
    rs.clear();
    for (int k = 1; k <= 64; ++k) rs.push_back(50.0 * k / 64.0);
    const double m4 = spot_min(rs, [&](double x) {
      const double y = R_eval(r_eval(x, a), c);
      return x - R_eval(r_eval(y, a), c);
    });
    add_fact(cert, "(R o r)^2 (x) < x on sampled x in (0, 50]", m4, m4 > 0.0);
    return cert;
  }

  // S
  const double g = c.gamma;
  add_fact(cert, "gamma < 1", g, g < 1.0);
  const double R2a = R2_eval(a, np);
  add_fact(cert, "R2(a) > -1", R2a, R2a > -1.0);
  const double pole = r_eval(R2a, a) * c.beta;
  add_fact(cert, "r(R2(a)) < 1/beta", pole, pole < 1.0);
  std::vector<double> zs;
  for (int k = 1; k <= 64; ++k) zs.push_back(50.0 * k / 64.0);
  const double m = spot_min(zs, [&](double z) { return z - lambda_composite(z, np); });
  add_fact(cert, "lambda(z) < z on sampled z in (0, 50]", m, m > 0.0);
  const double eps = 1e-6;
  const double slope = (lambda_composite(eps, np) - lambda_composite(-eps, np)) / (2.0 * eps);
  add_fact(cert, "lambda'(0) = gamma", slope, std::abs(slope - g) <= 1e-6 * std::max(1.0, std::abs(g)));
  (void)theta;
  return cert;
}

// ---- figures ----------------------------------------------------------------

std::string_view to_string(RasterLabel l) {
  switch (l) {
    case RasterLabel::Outside:
      return "outside";
    case RasterLabel::Linear:
      return "linear";
    case RasterLabel::DStar:
      return "dstar";
    case RasterLabel::S:
      return "s";
  }
  return "?";
}

std::vector<Fig1Row> fig1_rows(int n) {
  if (n < 1) throw std::invalid_argument("fig1_rows: n must be positive");
  std::vector<Fig1Row> rows;
  rows.reserve(n);
  for (int k = 1; k <= n; ++k) {
    const double c = 10.0 * k / n;
    const double g = global_boundary_theta(c);
    const auto l = local_stability_boundary(-c);
    const double lt = l ? *l : 0.0;
    rows.push_back({c, g, lt, g - lt});
  }
  return rows;
}

std::vector<Fig2Curve> fig2_curves(int n) {
  if (n < 2) throw std::invalid_argument("fig2_curves: n must be at least 2");
  std::vector<Fig2Curve> out;
  for (int k = 1; k < n; ++k) {
    const double mu = static_cast<double>(k) / n;
    const auto l = local_stability_boundary(-1.0 / mu);
    out.push_back({mu, pi_curve(1, mu), pi_curve(2, mu), pi_curve(3, mu), l ? *l : 0.0});
  }
  return out;
}

std::vector<Fig2Cell> fig2_raster(int n, Exec exec) {
  if (n < 2) throw std::invalid_argument("fig2_raster: n must be at least 2");
  const std::size_t m = static_cast<std::size_t>(n - 1);
  std::vector<Fig2Cell> cells(m * m);
  for_each_index(
      m,
      [&](std::size_t i) {
        const double theta = static_cast<double>(i + 1) / n;
        for (std::size_t j = 0; j < m; ++j) {
          const double mu = static_cast<double>(j + 1) / n;
          RasterLabel lab = RasterLabel::Outside;
          const RegionLabel r = classify(NormParams(-1.0 / mu, theta));
          if (r.tag == Region::GloballyStableLinear) lab = RasterLabel::Linear;
          if (r.tag == Region::GloballyStableDStar) lab = RasterLabel::DStar;
          if (r.tag == Region::GloballyStableS) lab = RasterLabel::S;
          cells[i * m + j] = {theta, mu, lab};
        }
      },
      exec);
  return cells;
}

namespace {

FigureSummary summarize(const std::vector<Fig1Row>& f1, const std::vector<Fig2Curve>& curves,
                        const std::vector<Fig2Cell>& raster) {
  FigureSummary s;
  s.fig1_points = static_cast<int>(f1.size());
  for (const auto& r : f1) {
    s.max_gap = std::max(s.max_gap, r.gap);
    s.min_gap = std::min(s.min_gap, r.gap);
    if (r.gap < 0.0) s.global_inside_local = false;
  }
  for (const auto& c : raster) {
    if (in_domain_D(c.theta, c.mu)) ++s.d_cells;
    switch (c.label) {
      case RasterLabel::Linear:
        ++s.linear_cells;
        break;
      case RasterLabel::DStar:
        ++s.dstar_cells;
        break;
      case RasterLabel::S:
        ++s.s_cells;
        if (!(pi_curve(3, c.mu) <= c.theta && c.theta <= pi_curve(1, c.mu))) s.ordering_ok = false;
        break;
      case RasterLabel::Outside:
        break;
    }
  }
  for (const auto& c : curves) {
    if (!(c.pi2 <= c.pi1)) s.ordering_ok = false;
    if (c.pi1 >= 0.8 && !(c.pi3 <= c.pi1)) s.ordering_ok = false;
  }
  return s;
}

}  // namespace

FigureSummary summarize_figures(const FigureOptions& opt) {
  return summarize(fig1_rows(opt.fig1_points), fig2_curves(opt.curve_points), fig2_raster(opt.raster_points));
}

FigureSummary sweep_figures(const std::string& out_dir, const FigureOptions& opt) {
  const auto f1 = fig1_rows(opt.fig1_points);
  const auto curves = fig2_curves(opt.curve_points);
  const auto raster = fig2_raster(opt.raster_points);
  FigureSummary s = summarize(f1, curves, raster);

  const std::filesystem::path dir(out_dir);
  std::string csv = csv_row(std::vector<std::string>{"c", "theta_global", "theta_local", "gap"});
  for (const auto& r : f1) csv += csv_row(std::vector<double>{r.c, r.theta_global, r.theta_local, r.gap});
  write_text_file((dir / "fig1_stability.csv").string(), csv);
  s.files.push_back((dir / "fig1_stability.csv").string());

  csv = csv_row(std::vector<std::string>{"mu", "theta_pi1", "theta_pi2", "theta_pi3", "theta_local"});
  for (const auto& c : curves) csv += csv_row(std::vector<double>{c.mu, c.pi1, c.pi2, c.pi3, c.theta_local});
  write_text_file((dir / "fig2_curves.csv").string(), csv);
  s.files.push_back((dir / "fig2_curves.csv").string());

  write_text_file((dir / "fig2_curves.json").string(), fig2_curves_json(curves));
  s.files.push_back((dir / "fig2_curves.json").string());

  csv = csv_row(std::vector<std::string>{"theta", "mu", "label"});
  for (const auto& c : raster)
    csv += csv_row(std::vector<std::string>{format_double(c.theta), format_double(c.mu), std::string(to_string(c.label))});
  write_text_file((dir / "fig2_raster.csv").string(), csv);
  s.files.push_back((dir / "fig2_raster.csv").string());
  return s;
}

}  // namespace ddestab
