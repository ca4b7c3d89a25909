#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tailscope/estimator.hpp"
#include "tailscope/family.hpp"

namespace tailscope {

// The four entropic plots.
//   I   : T_v            vs v
//   II  : ln T_v         vs ln v
//   III : ln T_v         vs ln ln v        (v >= 2)
//   IV  : ln T_v         vs ln ln ln v     (v >= 3)
enum class PlotTransform { I, II, III, IV };

struct PlotSeries {
  PlotTransform transform;
  std::vector<double> x;  // strictly increasing
  std::vector<double> y;
  std::int64_t dropped = 0;  // profile entries excluded by the transform
};

struct ClassifierConfig {
  std::int64_t v1 = 6;
  std::int64_t v2 = 99;
  // A profile counts as flat (exponential or thinner) when the least-squares
  // line of T_v over the window rises by less than flat_threshold times the
  // mean level. See drift_statistic.
  double flat_threshold = 0.35;
  std::int64_t min_points = 10;

  // Default window for a sample of size n: v1 = 6 and
  // v2 = min(500, max(99, n/20)), capped at n-1.
  static ClassifierConfig defaults_for(std::uint64_t n);
};

struct TailClassification {
  TailFamily family = TailFamily::ExponentialOrThinner;
  std::optional<double> r_power;    // Pearson r of Plot II
  std::optional<double> r_subexp;   // Pearson r of Plot III
  std::optional<double> r_nearexp;  // Pearson r of Plot IV
  double trend = 0.0;  // Kendall rank correlation of T_v against v
  double drift = 0.0;  // normalized rise of the least-squares line
  std::optional<double> slope;               // OLS slope of the winning plot
  std::optional<double> parameter_estimate;  // lambda-hat, alpha-hat or beta-hat
  std::int64_t dropped_points = 0;           // exclusions in the winning plot
};

// Applies a plot transform pointwise. Entries with T_v <= 0 are dropped from
// the log plots, as are entries below the transform's minimum order; both are
// counted in `dropped`. Throws TooFewPointsError if fewer than min_points
// survive.
PlotSeries plot_series(const TailProfile& profile, PlotTransform transform,
                       std::int64_t min_points = 1);

// Sample Pearson correlation coefficient. Needs >= 3 points and non-constant
// coordinates (DegenerateSeriesError otherwise).
double pearson_r(const PlotSeries& series);

// Least-squares slope of y on x.
double ols_slope(const PlotSeries& series);

// Kendall rank correlation between v and T_v: concordant minus discordant
// pairs over all pairs; ties contribute zero. Needs >= 3 entries.
double trend_statistic(const TailProfile& profile);

// Rise of the least-squares line of T_v across the window divided by the
// mean level: slope * (v_max - v_min) / mean(T). Scale-free; a profile that
// merely oscillates has drift near zero while a growing one exceeds 1/2.
double drift_statistic(const TailProfile& profile);

// Shape parameter implied by the winning plot's slope:
//   Power           lambda = 1 / slope
//   SubExponential  alpha  = 1 / (slope + 1)
//   NearExponential beta   = slope
// Power and SubExponential require a positive slope.
double estimate_parameter(TailFamily family, double slope);

// Full classification of a tail profile covering [config.v1, config.v2]:
// flat profiles go to ExponentialOrThinner, otherwise the log plot with the
// highest Pearson r decides, ties broken Power > SubExponential >
// NearExponential.
TailClassification classify(const TailProfile& profile, const ClassifierConfig& config);

}  // namespace tailscope
