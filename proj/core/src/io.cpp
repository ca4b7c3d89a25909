#include "tailscope/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tailscope {

namespace {

std::string fmt15(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

}  // namespace

void write_profile_csv(std::ostream& out, const TailProfile& profile) {
  out << "v,T_v\n";
  for (std::int64_t v = profile.v_min(); v <= profile.v_max(); ++v)
    out << v << ',' << fmt15(profile.at(v)) << '\n';
}

void write_profile_csv(const std::filesystem::path& path, const TailProfile& profile) {
  auto out = open_out(path);
  write_profile_csv(out, profile);
  if (!out) throw IoError("failed writing " + path.string());
}

TailProfile read_profile_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<double> values;
  std::int64_t v_min = 0, expected_v = 0;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    std::string body = line;
    if (const auto hash = body.find('#'); hash != std::string::npos) body.erase(hash);
    while (!body.empty() && (body.back() == '\r' || body.back() == ' ')) body.pop_back();
    if (body.empty()) continue;
    if (body == "v,T_v") continue;  // header
    const auto comma = body.find(',');
    if (comma == std::string::npos) throw ParseError("expected v,T_v row", lineno);
    char* end = nullptr;
    const std::string v_text = body.substr(0, comma);
    const long long v = std::strtoll(v_text.c_str(), &end, 10);
    if (end == v_text.c_str() || *end != '\0' || v < 1)
      throw ParseError("bad profile order '" + v_text + "'", lineno);
    const std::string t_text = body.substr(comma + 1);
    const double t = std::strtod(t_text.c_str(), &end);
    if (end == t_text.c_str() || *end != '\0' || !std::isfinite(t))
      throw ParseError("bad profile value '" + t_text + "'", lineno);
    if (values.empty()) {
      v_min = v;
    } else if (v != expected_v) {
      throw ParseError("profile orders must be consecutive", lineno);
    }
    expected_v = v + 1;
    values.push_back(t);
  }
  if (values.empty()) throw ParseError("profile file has no rows", 1);
  return TailProfile(v_min, std::move(values));
}

void write_series_csv(std::ostream& out, const PlotSeries& series) {
  out << "x,y\n";
  for (std::size_t i = 0; i < series.x.size(); ++i)
    out << fmt15(series.x[i]) << ',' << fmt15(series.y[i]) << '\n';
  if (series.dropped > 0)
    out << "# dropped: " << series.dropped << " profile entries not representable\n";
}

std::string render_series_svg(const PlotSeries& series, const std::string& title) {
  constexpr double width = 640, height = 420;
  constexpr double ml = 60, mr = 20, mt = 40, mb = 50;
  double x_lo = series.x.front(), x_hi = series.x.front();
  double y_lo = series.y.front(), y_hi = series.y.front();
  for (double x : series.x) {
    x_lo = std::min(x_lo, x);
    x_hi = std::max(x_hi, x);
  }
  for (double y : series.y) {
    y_lo = std::min(y_lo, y);
    y_hi = std::max(y_hi, y);
  }
  if (x_hi == x_lo) x_hi = x_lo + 1;
  if (y_hi == y_lo) y_hi = y_lo + 1;
  const auto sx = [&](double x) {
    return ml + (x - x_lo) / (x_hi - x_lo) * (width - ml - mr);
  };
  const auto sy = [&](double y) {
    return height - mb - (y - y_lo) / (y_hi - y_lo) * (height - mt - mb);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
      << "\">\n";
  svg << "  <title>" << title << "</title>\n";
  svg << "  <text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
  svg << "  <line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
      << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
  svg << "  <line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
      << height - mb << "\" stroke=\"black\"/>\n";
  svg << "  <text x=\"" << ml << "\" y=\"" << height - mb + 18
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << fmt15(x_lo) << "</text>\n";
  svg << "  <text x=\"" << width - mr << "\" y=\"" << height - mb + 18
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << fmt15(x_hi) << "</text>\n";
  svg << "  <text x=\"" << ml - 6 << "\" y=\"" << height - mb
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << fmt15(y_lo) << "</text>\n";
  svg << "  <text x=\"" << ml - 6 << "\" y=\"" << mt + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << fmt15(y_hi) << "</text>\n";
  svg << "  <polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < series.x.size(); ++i) {
    if (i > 0) svg << ' ';
    svg << fmt15(sx(series.x[i])) << ',' << fmt15(sy(series.y[i]));
  }
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

std::string classification_report_json(const TailClassification& result,
                                       const ClassifierConfig& config) {
  nlohmann::ordered_json report;
  report["family"] = family_token(result.family);
  const auto set_optional = [&report](const char* key, const std::optional<double>& v) {
    if (v)
      report[key] = *v;
    else
      report[key] = nullptr;
  };
  set_optional("r_II", result.r_power);
  set_optional("r_III", result.r_subexp);
  set_optional("r_IV", result.r_nearexp);
  report["trend"] = result.trend;
  set_optional("slope", result.slope);
  set_optional("parameter_estimate", result.parameter_estimate);
  report["v1"] = config.v1;
  report["v2"] = config.v2;
  report["dropped_points"] = result.dropped_points;
  return report.dump(2) + "\n";
}

void write_confusion_csv(std::ostream& out, const ConfusionMatrix& cm) {
  out << "true_family,n,pred_power,pred_subexp,pred_nearexp,pred_expthin\n";
  for (const auto& cell : cm.cells()) {
    out << family_token(cell.truth) << ',' << cell.n;
    for (auto count : cell.predicted) out << ',' << count;
    out << '\n';
  }
}

void write_precision_csv(std::ostream& out, const ConfusionMatrix& cm,
                         std::span<const std::int64_t> sample_sizes) {
  out << "n,p_power,p_power_c,p_subexp,p_subexp_c,p_nearexp,p_nearexp_c\n";
  for (std::int64_t n : sample_sizes) {
    const auto summary = precision_summary(cm, n);
    out << n;
    for (std::size_t f = 0; f < 3; ++f) {
      if (summary.precision[f]) {
        out << ',' << fmt15(*summary.precision[f]) << ','
            << fmt15(1.0 - *summary.precision[f]);
      } else {
        out << ",NA,NA";
      }
    }
    out << '\n';
  }
}

}  // namespace tailscope
