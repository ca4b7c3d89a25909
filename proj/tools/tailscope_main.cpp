// tailscope: tail-profile estimation and tail-type classification for
// discrete samples, plus a Monte Carlo study harness.
//
// Exit codes: 0 success, 1 I/O failure, 2 validation failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tailscope/classifier.hpp"
#include "tailscope/estimator.hpp"
#include "tailscope/ingestion.hpp"
#include "tailscope/io.hpp"
#include "tailscope/simulation.hpp"

namespace {

namespace fs = std::filesystem;
using namespace tailscope;

struct InputOptions {
  std::string values_path;
  std::string counts_path;
  double delta = 1e-4;
  std::string tail = "right";
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("--values", in.values_path,
                  "File with one observation per line (discretized via --delta/--tail)");
  cmd->add_option("--counts", in.counts_path, "CSV of symbol,count rows");
  cmd->add_option("--delta", in.delta, "Bin width for --values input")
      ->capture_default_str();
  cmd->add_option("--tail", in.tail, "Which tail to bin for --values input")
      ->check(CLI::IsMember({"left", "right"}))
      ->capture_default_str();
}

FrequencyTable load_input(const InputOptions& in) {
  const bool have_values = !in.values_path.empty();
  const bool have_counts = !in.counts_path.empty();
  if (have_values == have_counts)
    throw InvalidArgumentError("exactly one of --values or --counts is required");
  if (have_counts) return load_counts(in.counts_path);
  const auto values = load_values(in.values_path);
  DiscretizationSpec spec;
  spec.delta = in.delta;
  spec.tail_side = in.tail == "left" ? TailSide::Left : TailSide::Right;
  return discretize(values, spec);
}

// v1/v2 of 0 mean "derive from the sample size".
ClassifierConfig resolve_window(const FrequencyTable& table, std::int64_t v1,
                                std::int64_t v2) {
  ClassifierConfig cfg = ClassifierConfig::defaults_for(table.n());
  if (v1 > 0) cfg.v1 = v1;
  if (v2 > 0) cfg.v2 = v2;
  if (cfg.v1 < 1 || cfg.v1 >= cfg.v2 ||
      cfg.v2 > static_cast<std::int64_t>(table.n()) - 1)
    throw InvalidRangeError("window must satisfy 1 <= v1 < v2 <= n-1");
  return cfg;
}

void write_text(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << body;
  if (!out) throw IoError("failed writing " + path);
}

int cmd_profile(const InputOptions& in, std::int64_t v1, std::int64_t v2,
                const std::string& out_path) {
  const auto table = load_input(in);
  const auto cfg = resolve_window(table, v1, v2);
  const auto profile = tail_profile(table, cfg.v1, cfg.v2);
  std::ostringstream body;
  write_profile_csv(body, profile);
  write_text(out_path, body.str());
  return 0;
}

int cmd_classify(const InputOptions& in, std::int64_t v1, std::int64_t v2,
                 double flat_threshold, std::int64_t min_points,
                 const std::string& out_path) {
  const auto table = load_input(in);
  auto cfg = resolve_window(table, v1, v2);
  cfg.flat_threshold = flat_threshold;
  cfg.min_points = min_points;
  const auto profile = tail_profile(table, cfg.v1, cfg.v2);
  const auto result = classify(profile, cfg);
  write_text(out_path, classification_report_json(result, cfg));
  return 0;
}

int cmd_simulate(const std::vector<std::string>& dist_specs,
                 const std::vector<std::int64_t>& sample_sizes, std::int64_t reps,
                 std::uint64_t seed, std::int64_t v1, std::int64_t v2,
                 double flat_threshold, unsigned threads, const std::string& out_dir) {
  StudyConfig config;
  for (const auto& spec : dist_specs)
    config.distributions.push_back(TonicDistribution::parse(spec));
  config.sample_sizes = sample_sizes;
  config.reps = reps;
  config.master_seed = seed;
  config.flat_threshold = flat_threshold;
  if (v1 > 0 || v2 > 0) {
    if (v1 <= 0 || v2 <= 0)
      throw InvalidArgumentError("--v1 and --v2 must be given together");
    config.window = {v1, v2};
  }

  const auto matrix = run_study(config, threads);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir);
  {
    std::ofstream out(fs::path(out_dir) / "confusion.csv");
    if (!out) throw IoError("cannot write confusion.csv");
    write_confusion_csv(out, matrix);
  }
  {
    std::ofstream out(fs::path(out_dir) / "precision.csv");
    if (!out) throw IoError("cannot write precision.csv");
    write_precision_csv(out, matrix, config.sample_sizes);
  }
  return 0;
}

int cmd_plot(const std::string& profile_path, const std::string& transform_name,
             const std::string& out_path) {
  const auto profile = read_profile_csv(profile_path);
  PlotTransform transform;
  if (transform_name == "I") transform = PlotTransform::I;
  else if (transform_name == "II") transform = PlotTransform::II;
  else if (transform_name == "III") transform = PlotTransform::III;
  else if (transform_name == "IV") transform = PlotTransform::IV;
  else throw InvalidArgumentError("transform must be one of I, II, III, IV");

  const auto series = plot_series(profile, transform, 1);
  const auto ext = fs::path(out_path).extension().string();
  if (ext == ".svg") {
    write_text(out_path, render_series_svg(series, "Plot " + transform_name));
  } else if (ext == ".csv" || out_path.empty() || out_path == "-") {
    std::ostringstream body;
    write_series_csv(body, series);
    write_text(out_path, body.str());
  } else {
    throw InvalidArgumentError("plot output must end in .csv or .svg");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropic tail profiles and tail-type classification"};
  app.require_subcommand(1);

  InputOptions in;
  std::int64_t v1 = 0, v2 = 0;
  std::string out_path = "-";
  double flat_threshold = ClassifierConfig{}.flat_threshold;
  std::int64_t min_points = ClassifierConfig{}.min_points;

  auto* profile_cmd = app.add_subcommand("profile", "Write the estimated tail profile as CSV");
  add_input_options(profile_cmd, in);
  profile_cmd->add_option("--v1", v1, "First profile order (0 = auto)");
  profile_cmd->add_option("--v2", v2, "Last profile order (0 = auto)");
  profile_cmd->add_option("--out", out_path, "Output path, - for stdout");

  auto* classify_cmd = app.add_subcommand("classify", "Classify the tail and report JSON");
  add_input_options(classify_cmd, in);
  classify_cmd->add_option("--v1", v1, "First profile order (0 = auto)");
  classify_cmd->add_option("--v2", v2, "Last profile order (0 = auto)");
  classify_cmd->add_option("--flat-threshold", flat_threshold,
                           "Minimum normalized rise before a profile counts as growing")
      ->capture_default_str();
  classify_cmd->add_option("--min-points", min_points, "Minimum surviving points per plot")
      ->capture_default_str();
  classify_cmd->add_option("--out", out_path, "Output path, - for stdout");

  std::vector<std::string> dist_specs;
  std::vector<std::int64_t> sample_sizes;
  std::int64_t reps = 100;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out_dir;
  auto* simulate_cmd = app.add_subcommand(
      "simulate", "Monte Carlo classification study; writes confusion and precision CSVs");
  simulate_cmd->add_option("--dist", dist_specs,
                           "Distribution spec, e.g. power:lambda=2 (repeatable)")
      ->required();
  simulate_cmd->add_option("--n", sample_sizes, "Sample size (repeatable)")->required();
  simulate_cmd->add_option("--reps", reps, "Trials per cell")->capture_default_str();
  simulate_cmd->add_option("--seed", seed, "Master seed")->capture_default_str();
  simulate_cmd->add_option("--v1", v1, "Window start override");
  simulate_cmd->add_option("--v2", v2, "Window end override");
  simulate_cmd->add_option("--flat-threshold", flat_threshold,
                           "Minimum normalized rise before a profile counts as growing")
      ->capture_default_str();
  simulate_cmd->add_option("--threads", threads,
                           "Worker threads (0 = TAILSCOPE_THREADS or hardware)");
  simulate_cmd->add_option("--out", out_dir, "Output directory")->required();

  std::string plot_profile_path, transform_name;
  auto* plot_cmd = app.add_subcommand("plot", "Transform a profile CSV into plot data or SVG");
  plot_cmd->add_option("--profile", plot_profile_path, "Profile CSV (v,T_v)")->required();
  plot_cmd->add_option("--transform", transform_name, "I, II, III or IV")->required();
  plot_cmd->add_option("--out", out_path, "Output path (.csv or .svg), - for CSV on stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (profile_cmd->parsed()) return cmd_profile(in, v1, v2, out_path);
    if (classify_cmd->parsed())
      return cmd_classify(in, v1, v2, flat_threshold, min_points, out_path);
    if (simulate_cmd->parsed())
      return cmd_simulate(dist_specs, sample_sizes, reps, seed, v1, v2, flat_threshold,
                          threads, out_dir);
    if (plot_cmd->parsed()) return cmd_plot(plot_profile_path, transform_name, out_path);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
