#include "tailscope/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tailscope {

namespace {

std::int64_t transform_min_v(PlotTransform t) {
  switch (t) {
    case PlotTransform::I: return 1;
    case PlotTransform::II: return 1;
    case PlotTransform::III: return 2;  // ln ln v needs v >= 2
    case PlotTransform::IV: return 3;   // ln ln ln v needs v >= 3
  }
  return 1;
}

double transform_x(PlotTransform t, double v) {
  switch (t) {
    case PlotTransform::I: return v;
    case PlotTransform::II: return std::log(v);
    case PlotTransform::III: return std::log(std::log(v));
    case PlotTransform::IV: return std::log(std::log(std::log(v)));
  }
  return v;
}

struct Moments {
  double mean_x = 0, mean_y = 0, sxx = 0, syy = 0, sxy = 0;
};

Moments central_moments(const PlotSeries& s) {
  Moments m;
  const double n = static_cast<double>(s.x.size());
  for (double xi : s.x) m.mean_x += xi;
  for (double yi : s.y) m.mean_y += yi;
  m.mean_x /= n;
  m.mean_y /= n;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double dx = s.x[i] - m.mean_x;
    const double dy = s.y[i] - m.mean_y;
    m.sxx += dx * dx;
    m.syy += dy * dy;
    m.sxy += dx * dy;
  }
  return m;
}

}  // namespace

ClassifierConfig ClassifierConfig::defaults_for(std::uint64_t n) {
  if (n < 3) throw InvalidRangeError("need n >= 3 for a classification window");
  const std::int64_t nn = static_cast<std::int64_t>(n);
  ClassifierConfig cfg;
  cfg.v2 = std::min<std::int64_t>(500, std::max<std::int64_t>(99, nn / 20));
  cfg.v2 = std::min(cfg.v2, nn - 1);
  cfg.v1 = std::min<std::int64_t>(6, cfg.v2 - 1);
  if (cfg.v1 < 1) cfg.v1 = 1;
  return cfg;
}

PlotSeries plot_series(const TailProfile& profile, PlotTransform transform,
                       std::int64_t min_points) {
  PlotSeries series;
  series.transform = transform;
  const bool log_plot = transform != PlotTransform::I;
  const std::int64_t v_floor = transform_min_v(transform);
  for (std::int64_t v = profile.v_min(); v <= profile.v_max(); ++v) {
    const double t = profile.at(v);
    if (v < v_floor || (log_plot && t <= 0.0)) {
      ++series.dropped;
      continue;
    }
    series.x.push_back(transform_x(transform, static_cast<double>(v)));
    series.y.push_back(log_plot ? std::log(t) : t);
  }
  if (static_cast<std::int64_t>(series.x.size()) < min_points)
    throw TooFewPointsError("only " + std::to_string(series.x.size()) +
                            " points survive the transform, need " +
                            std::to_string(min_points));
  return series;
}

double pearson_r(const PlotSeries& series) {
  if (series.x.size() < 3) throw TooFewPointsError("correlation needs at least 3 points");
  const Moments m = central_moments(series);
  if (m.sxx == 0.0 || m.syy == 0.0)
    throw DegenerateSeriesError("constant coordinate in series");
  return m.sxy / std::sqrt(m.sxx * m.syy);
}

double ols_slope(const PlotSeries& series) {
  if (series.x.size() < 2) throw TooFewPointsError("slope needs at least 2 points");
  const Moments m = central_moments(series);
  if (m.sxx == 0.0) throw DegenerateSeriesError("constant abscissa in series");
  return m.sxy / m.sxx;
}

double trend_statistic(const TailProfile& profile) {
  const auto t = profile.values();
  const std::size_t m = t.size();
  if (m < 3) throw TooFewPointsError("trend needs at least 3 profile entries");
  std::int64_t net = 0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (t[j] > t[i]) ++net;
      else if (t[j] < t[i]) --net;
    }
  }
  const double pairs = 0.5 * static_cast<double>(m) * static_cast<double>(m - 1);
  return static_cast<double>(net) / pairs;
}

double drift_statistic(const TailProfile& profile) {
  const auto t = profile.values();
  if (t.size() < 3) throw TooFewPointsError("drift needs at least 3 profile entries");
  double mean_v = 0, mean_t = 0;
  const double m = static_cast<double>(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    mean_v += static_cast<double>(i);
    mean_t += t[i];
  }
  mean_v /= m;
  mean_t /= m;
  if (mean_t <= 0.0) return 0.0;  // all-zero profile is flat
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double dv = static_cast<double>(i) - mean_v;
    sxx += dv * dv;
    sxy += dv * (t[i] - mean_t);
  }
  const double slope = sxy / sxx;
  return slope * static_cast<double>(t.size() - 1) / mean_t;
}

double estimate_parameter(TailFamily family, double slope) {
  switch (family) {
    case TailFamily::Power:
      if (!(slope > 0.0)) throw NonpositiveSlopeError("power fit needs a positive slope");
      return 1.0 / slope;
    case TailFamily::SubExponential:
      if (!(slope > 0.0))
        throw NonpositiveSlopeError("sub-exponential fit needs a positive slope");
      return 1.0 / (slope + 1.0);
    case TailFamily::NearExponential:
      return slope;
    case TailFamily::ExponentialOrThinner:
      throw UnsupportedError("no shape parameter for exponential-or-thinner");
  }
  throw UnsupportedError("unknown family");
}

TailClassification classify(const TailProfile& profile, const ClassifierConfig& config) {
  if (config.v1 < 1 || config.v1 >= config.v2)
    throw InvalidRangeError("classifier window must satisfy 1 <= v1 < v2");
  const TailProfile window = profile.slice(config.v1, config.v2);

  TailClassification result;
  result.trend = trend_statistic(window);
  result.drift = drift_statistic(window);

  struct Candidate {
    TailFamily family;
    PlotTransform transform;
    std::optional<double>* r_slot;
  };
  Candidate candidates[3] = {
      {TailFamily::Power, PlotTransform::II, &result.r_power},
      {TailFamily::SubExponential, PlotTransform::III, &result.r_subexp},
      {TailFamily::NearExponential, PlotTransform::IV, &result.r_nearexp},
  };

  PlotSeries series[3];
  bool have_series[3] = {false, false, false};
  std::optional<TooFewPointsError> starved;
  for (int i = 0; i < 3; ++i) {
    try {
      series[i] = plot_series(window, candidates[i].transform, config.min_points);
      *candidates[i].r_slot = pearson_r(series[i]);
      have_series[i] = true;
    } catch (const DegenerateSeriesError&) {
    } catch (const TooFewPointsError& err) {
      if (!starved) starved = err;
    }
  }

  const bool flat = result.drift < config.flat_threshold;
  if (flat) {
    result.family = TailFamily::ExponentialOrThinner;
    return result;
  }

  int best = -1;
  for (int i = 0; i < 3; ++i) {
    if (!candidates[i].r_slot->has_value()) continue;
    if (best < 0 || candidates[i].r_slot->value() > candidates[best].r_slot->value())
      best = i;  // strict > keeps the earlier family on exact ties
  }
  if (best < 0) {
    if (starved) throw *starved;
    result.family = TailFamily::ExponentialOrThinner;
    return result;
  }

  result.family = candidates[best].family;
  result.slope = ols_slope(series[best]);
  result.dropped_points = series[best].dropped;
  if (have_series[best]) {
    try {
      result.parameter_estimate = estimate_parameter(result.family, *result.slope);
    } catch (const NonpositiveSlopeError&) {
      // slope inverted out of range; leave the estimate unset
    }
  }
  return result;
}

}  // namespace tailscope
