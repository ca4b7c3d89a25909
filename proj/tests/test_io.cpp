#include <doctest.h>

#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tailscope/io.hpp"

using namespace tailscope;
namespace fs = std::filesystem;

namespace {

fs::path temp_path(const std::string& stem) {
  return fs::temp_directory_path() /
         (stem + "_" + std::to_string(::getpid()) + ".csv");
}

}  // namespace

TEST_CASE("profile CSV round trip") {
  const TailProfile profile(6, {0.8333333333333333, 1.25, 7.0000001234567891,
                                3.14159265358979, 0.0});
  const auto path = temp_path("profile_rt");
  write_profile_csv(path, profile);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "v,T_v");

  const auto back = read_profile_csv(path);
  CHECK(back.v_min() == 6);
  CHECK(back.v_max() == 10);
  for (std::int64_t v = 6; v <= 10; ++v)
    CHECK(back.at(v) == doctest::Approx(profile.at(v)).epsilon(1e-14));
  fs::remove(path);
}

TEST_CASE("profile CSV validation") {
  const auto path = temp_path("profile_bad");
  {
    std::ofstream out(path);
    out << "v,T_v\n6,1.0\n9,2.0\n";  // gap in orders
  }
  CHECK_THROWS_AS(read_profile_csv(path), ParseError);
  {
    std::ofstream out(path);
    out << "6,oops\n";
  }
  CHECK_THROWS_AS(read_profile_csv(path), ParseError);
  fs::remove(path);
  CHECK_THROWS_AS(read_profile_csv(path), IoError);
}

TEST_CASE("series CSV notes dropped entries") {
  PlotSeries series;
  series.transform = PlotTransform::IV;
  series.x = {1.0, 2.0};
  series.y = {0.5, 0.6};
  series.dropped = 1;
  std::ostringstream out;
  write_series_csv(out, series);
  const auto text = out.str();
  CHECK(text.find("x,y\n") == 0);
  CHECK(text.find("# dropped: 1") != std::string::npos);

  series.dropped = 0;
  std::ostringstream clean;
  write_series_csv(clean, series);
  CHECK(clean.str().find('#') == std::string::npos);
}

TEST_CASE("SVG rendering") {
  PlotSeries series;
  series.transform = PlotTransform::II;
  for (int i = 1; i <= 20; ++i) {
    series.x.push_back(std::log(double(i)));
    series.y.push_back(0.5 * std::log(double(i)) + 0.1);
  }
  const auto svg = render_series_svg(series, "Plot II");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<title>Plot II</title>") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  // exactly one polyline
  CHECK(svg.find("<polyline", svg.find("<polyline") + 1) == std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("classification report JSON") {
  TailClassification result;
  result.family = TailFamily::SubExponential;
  result.r_power = 0.97;
  result.r_subexp = 0.999;
  result.r_nearexp = 0.98;
  result.trend = 0.91;
  result.drift = 0.8;
  result.slope = 1.02;
  result.parameter_estimate = 0.495;
  result.dropped_points = 2;
  ClassifierConfig cfg;
  cfg.v1 = 6;
  cfg.v2 = 99;

  const auto parsed = nlohmann::json::parse(classification_report_json(result, cfg));
  CHECK(parsed["family"] == "subexp");
  CHECK(parsed["r_II"] == doctest::Approx(0.97));
  CHECK(parsed["r_III"] == doctest::Approx(0.999));
  CHECK(parsed["r_IV"] == doctest::Approx(0.98));
  CHECK(parsed["trend"] == doctest::Approx(0.91));
  CHECK(parsed["slope"] == doctest::Approx(1.02));
  CHECK(parsed["parameter_estimate"] == doctest::Approx(0.495));
  CHECK(parsed["v1"] == 6);
  CHECK(parsed["v2"] == 99);
  CHECK(parsed["dropped_points"] == 2);

  TailClassification flat;
  flat.family = TailFamily::ExponentialOrThinner;
  flat.trend = 0.01;
  const auto parsed_flat = nlohmann::json::parse(classification_report_json(flat, cfg));
  CHECK(parsed_flat["family"] == "expthin");
  CHECK(parsed_flat["r_II"].is_null());
  CHECK(parsed_flat["slope"].is_null());
  CHECK(parsed_flat["parameter_estimate"].is_null());
}

TEST_CASE("confusion and precision CSV layout") {
  std::vector<ConfusionMatrix::Cell> cells(2);
  cells[0] = {TailFamily::Power, "power:lambda=2", 2000, {495, 5, 0, 0}};
  cells[1] = {TailFamily::SubExponential, "subexp:lambda=1,alpha=0.5", 2000,
              {1, 480, 19, 0}};
  const ConfusionMatrix cm(std::move(cells));

  std::ostringstream conf;
  write_confusion_csv(conf, cm);
  std::istringstream lines(conf.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "true_family,n,pred_power,pred_subexp,pred_nearexp,pred_expthin");
  std::getline(lines, line);
  CHECK(line == "power,2000,495,5,0,0");
  std::getline(lines, line);
  CHECK(line == "subexp,2000,1,480,19,0");

  std::ostringstream prec;
  const std::vector<std::int64_t> ns = {2000};
  write_precision_csv(prec, cm, ns);
  std::istringstream plines(prec.str());
  std::getline(plines, line);
  CHECK(line == "n,p_power,p_power_c,p_subexp,p_subexp_c,p_nearexp,p_nearexp_c");
  std::getline(plines, line);
  // power precision 495/496; nearexp never true yet predicted 19 times -> 0
  CHECK(line.find("2000,0.99798") == 0);
  CHECK(line.find(",0,1") != std::string::npos);  // p_nearexp = 0, complement 1
}
