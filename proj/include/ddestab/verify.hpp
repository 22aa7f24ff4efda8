#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "ddestab/params.hpp"
#include "ddestab/sweep.hpp"

namespace ddestab {

struct Violation {
  std::vector<double> point;
  double lhs = NAN;
  double rhs = NAN;
  double margin = NAN;
};

struct LemmaReport {
  std::string lemma_id;
  std::string statement;
  std::string grid_desc;
  std::vector<std::string> coordinates;  // names of the entries of each point
  int resolution = 0;
  long long points_checked = 0;
  bool strict = true;
  // "raw" or "order_normalized": near a degenerate endpoint where both sides
  // touch to order k the margin is multiplied by (x_ref / x)^k.
  std::string margin_kind = "raw";
  double min_margin = INFINITY;
  std::vector<double> argmin;
  double raw_min_margin = INFINITY;
  long long extended_precision_points = 0;
  long long violation_count = 0;
  std::vector<Violation> violations;  // first kMaxStoredViolations in grid order

  bool passed() const { return violation_count == 0; }
};

inline constexpr std::size_t kMaxStoredViolations = 1000;

// Registered identifiers, in report order.
const std::vector<std::string>& lemma_ids();

// Samples the lemma's domain with `resolution` points per axis on nested
// grids and reports margins. Throws std::invalid_argument for unknown ids or
// resolution < 2.
LemmaReport verify_lemma(const std::string& id, int resolution, Exec exec = Exec::Parallel);

struct Fact {
  std::string statement;
  double value = NAN;
  bool holds = false;
};

struct Certificate {
  RegionLabel region;
  std::vector<Fact> chain;    // verified facts, empty iff NotCertified
  std::vector<Fact> failing;  // facts that did not hold
};

Certificate certificate(const NormParams& np);

struct Fig1Row {
  double c;
  double theta_global;
  double theta_local;
  double gap;  // theta_global - theta_local
};

struct Fig2Curve {
  double mu;
  double pi1;
  double pi2;
  double pi3;
  double theta_local;
};

enum class RasterLabel { Outside, Linear, DStar, S };

struct Fig2Cell {
  double theta;
  double mu;
  RasterLabel label;
};

std::string_view to_string(RasterLabel l);

// c_k = 10 k / n, k = 1..n.
std::vector<Fig1Row> fig1_rows(int n);
// mu_k = k / n, k = 1..n-1.
std::vector<Fig2Curve> fig2_curves(int n);
// theta_i = i / n, mu_j = j / n, i, j = 1..n-1; labels from the (theta, mu)
// domain definitions.
std::vector<Fig2Cell> fig2_raster(int n, Exec exec = Exec::Parallel);

struct FigureSummary {
  int fig1_points = 0;
  double max_gap = -INFINITY;
  double min_gap = INFINITY;
  bool global_inside_local = true;
  long long d_cells = 0;
  long long dstar_cells = 0;
  long long s_cells = 0;
  long long linear_cells = 0;
  bool ordering_ok = true;  // Pi2 <= Pi1 and Pi3 <= Pi1 wherever S is nonempty
  std::vector<std::string> files;
};

struct FigureOptions {
  int fig1_points = 1000;
  int curve_points = 1000;
  int raster_points = 256;
};

// Writes fig1_stability.csv, fig2_curves.csv, fig2_curves.json and
// fig2_raster.csv into out_dir (created if missing).
FigureSummary sweep_figures(const std::string& out_dir, const FigureOptions& opt = {});
// Same summary without touching the file system.
FigureSummary summarize_figures(const FigureOptions& opt = {});

}  // namespace ddestab
