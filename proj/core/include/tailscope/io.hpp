#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "tailscope/classifier.hpp"
#include "tailscope/estimator.hpp"
#include "tailscope/simulation.hpp"

namespace tailscope {

// Profile CSV: header `v,T_v`, one row per order, 15 significant digits.
void write_profile_csv(std::ostream& out, const TailProfile& profile);
void write_profile_csv(const std::filesystem::path& path, const TailProfile& profile);
TailProfile read_profile_csv(const std::filesystem::path& path);

// Plot-series CSV: header `x,y`; a trailing comment row records dropped
// entries when there are any.
void write_series_csv(std::ostream& out, const PlotSeries& series);

// Minimal static SVG line chart of a plot series: axes, one polyline, title.
std::string render_series_svg(const PlotSeries& series, const std::string& title);

// Classification report as pretty-printed JSON with fields family, r_II,
// r_III, r_IV, trend, slope, parameter_estimate, v1, v2, dropped_points.
std::string classification_report_json(const TailClassification& result,
                                       const ClassifierConfig& config);

// Confusion CSV: `true_family,n,pred_power,pred_subexp,pred_nearexp,pred_expthin`.
void write_confusion_csv(std::ostream& out, const ConfusionMatrix& cm);

// Precision CSV, one row per sample size:
// `n,p_power,p_power_c,p_subexp,p_subexp_c,p_nearexp,p_nearexp_c`
// (complement columns are 1 - precision; NA when the family was never
// predicted).
void write_precision_csv(std::ostream& out, const ConfusionMatrix& cm,
                         std::span<const std::int64_t> sample_sizes);

}  // namespace tailscope
