#include <doctest.h>

#include <cstdio>
#include <unistd.h>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "tailscope/distributions.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("tailscope_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  const fs::path out_file = work_dir() / "stdout.txt";
  const std::string cmd =
      std::string(TAILSCOPE_CLI) + " " + args + " > " + out_file.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out_file);
  std::stringstream buffer;
  buffer << in.rdbuf();
  result.out = buffer.str();
  return result;
}

fs::path write_file(const std::string& name, const std::string& contents) {
  const fs::path p = work_dir() / name;
  std::ofstream out(p);
  out << contents;
  return p;
}

}  // namespace

TEST_CASE("profile command emits the estimated profile") {
  const auto counts = write_file("counts.csv", "a,2\nb,1\nc,1\n");
  const auto res = run_cli("profile --counts " + counts.string() + " --v1 1 --v2 3");
  REQUIRE(res.exit_code == 0);
  std::istringstream lines(res.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "v,T_v");
  long v = 0;
  double t = 0;
  std::getline(lines, line);
  REQUIRE(std::sscanf(line.c_str(), "%ld,%lf", &v, &t) == 2);
  CHECK(v == 1);
  CHECK(t == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  std::getline(lines, line);
  std::sscanf(line.c_str(), "%ld,%lf", &v, &t);
  CHECK(t == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  std::getline(lines, line);
  std::sscanf(line.c_str(), "%ld,%lf", &v, &t);
  CHECK(t == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("profile command accepts raw values") {
  std::ostringstream body;
  body << "# synthetic returns\n";
  for (int i = 0; i < 400; ++i)
    body << (0.00013 * ((i * 37) % 101) - 0.002) << "\n";
  const auto values = write_file("values_profile.txt", body.str());
  const auto res = run_cli("profile --values " + values.string() +
                           " --delta 1e-4 --tail right --v1 1 --v2 20");
  REQUIRE(res.exit_code == 0);
  CHECK(res.out.rfind("v,T_v\n", 0) == 0);
  int rows = 0;
  for (char ch : res.out) rows += ch == '\n';
  CHECK(rows == 21);  // header + 20 orders
}

TEST_CASE("validation failures exit with code 2") {
  const auto counts = write_file("counts2.csv", "a,2\nb,1\nc,1\n");
  CHECK(run_cli("profile --counts " + counts.string() + " --v1 1 --v2 4").exit_code == 2);
  CHECK(run_cli("profile --v1 1 --v2 3").exit_code == 2);  // no input source
  const auto values = write_file("values.txt", "1.0\n2.0\n");
  CHECK(run_cli("profile --counts " + counts.string() + " --values " + values.string())
            .exit_code == 2);
  CHECK(run_cli("plot --profile " + counts.string() + " --transform V").exit_code == 2);
}

TEST_CASE("missing files exit with code 1") {
  CHECK(run_cli("profile --counts /no/such/file.csv --v1 1 --v2 3").exit_code == 1);
  CHECK(run_cli("plot --profile /no/such/profile.csv --transform II").exit_code == 1);
}

TEST_CASE("classify reports JSON with the window actually used") {
  const auto counts = write_file("counts3.csv", "a,2\nb,1\nc,1\n");
  const auto res = run_cli("classify --counts " + counts.string() +
                           " --v1 1 --v2 3 --min-points 3");
  REQUIRE(res.exit_code == 0);
  const auto report = nlohmann::json::parse(res.out);
  CHECK(report["v1"] == 1);
  CHECK(report["v2"] == 3);
  CHECK(report.contains("family"));
  CHECK(report.contains("trend"));
  // plots III and IV cannot field enough points on a 3-entry window
  CHECK(report["r_III"].is_null());
  CHECK(report["r_IV"].is_null());
}

TEST_CASE("classify recovers the family of a synthetic near-exponential sample") {
  const auto dist = tailscope::TonicDistribution::near_exponential(1.0, 2.0);
  const auto draws = dist.sample(10000, 20260810);
  std::ostringstream body;
  for (std::size_t i = 0; i < draws.size(); ++i) body << "s" << draws[i] << ",1\n";
  // accumulate duplicates through the loader
  const auto counts = write_file("nearexp_counts.csv", body.str());
  const auto res = run_cli("classify --counts " + counts.string());
  REQUIRE(res.exit_code == 0);
  const auto report = nlohmann::json::parse(res.out);
  CHECK(report["family"] == "nearexp");
  CHECK(report["v1"] == 6);
  CHECK(report["v2"] == 500);
}

TEST_CASE("simulate writes deterministic CSVs with correct row sums") {
  const fs::path out_a = work_dir() / "sim_a";
  const fs::path out_b = work_dir() / "sim_b";
  const std::string flags =
      "simulate --dist power:lambda=2 --n 2000 --reps 20 --seed 7 --out ";
  REQUIRE(run_cli(flags + out_a.string()).exit_code == 0);
  REQUIRE(run_cli(flags + out_b.string()).exit_code == 0);

  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const auto conf_a = slurp(out_a / "confusion.csv");
  CHECK(conf_a == slurp(out_b / "confusion.csv"));
  CHECK(slurp(out_a / "precision.csv") == slurp(out_b / "precision.csv"));

  std::istringstream lines(conf_a);
  std::string header, row;
  std::getline(lines, header);
  CHECK(header == "true_family,n,pred_power,pred_subexp,pred_nearexp,pred_expthin");
  std::getline(lines, row);
  long n = 0, a = 0, b = 0, c = 0, d = 0;
  char family[32];
  REQUIRE(std::sscanf(row.c_str(), "%31[^,],%ld,%ld,%ld,%ld,%ld", family, &n, &a, &b,
                      &c, &d) == 6);
  CHECK(std::string(family) == "power");
  CHECK(a + b + c + d == 20);
}

TEST_CASE("plot command produces CSV and SVG") {
  const auto profile = write_file("profile.csv", "v,T_v\n2,1.0\n3,2.0\n4,3.0\n5,4.0\n");

  const auto csv = run_cli("plot --profile " + profile.string() + " --transform II");
  REQUIRE(csv.exit_code == 0);
  CHECK(csv.out.rfind("x,y\n", 0) == 0);
  {
    std::istringstream lines(csv.out);
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    double x = 0, y = 0;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &x, &y) == 2);
    CHECK(x == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(y == doctest::Approx(std::log(1.0)).epsilon(1e-12));
  }

  // v = 2 has no triple logarithm: dropped and noted
  const auto iv = run_cli("plot --profile " + profile.string() + " --transform IV");
  REQUIRE(iv.exit_code == 0);
  CHECK(iv.out.find("# dropped: 1") != std::string::npos);

  const fs::path svg_path = work_dir() / "plot.svg";
  REQUIRE(run_cli("plot --profile " + profile.string() + " --transform II --out " +
                  svg_path.string())
              .exit_code == 0);
  std::ifstream svg_in(svg_path);
  std::stringstream svg;
  svg << svg_in.rdbuf();
  CHECK(svg.str().rfind("<svg", 0) == 0);
  CHECK(svg.str().find("<polyline") != std::string::npos);
  CHECK(svg.str().find("</svg>") != std::string::npos);
}

TEST_CASE("help is available and exits cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("simulate --help").out.find("--reps") != std::string::npos);
}
