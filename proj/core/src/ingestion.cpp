#include "tailscope/ingestion.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <string>

namespace tailscope {

namespace {

// Aggregate class for observations on the opposite side of the tail.
constexpr std::int64_t kAggregateBin = -1;

std::string strip(const std::string& line) {
  std::string s = line;
  if (const auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& text, std::size_t line) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(value))
    throw ParseError("expected a decimal value, got '" + text + "'", line);
  return value;
}

std::uint64_t parse_count(const std::string& text, std::size_t line) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const unsigned long long value = std::strtoull(begin, &end, 10);
  if (end == begin || *end != '\0' || value == 0)
    throw ParseError("expected a positive integer count, got '" + text + "'", line);
  return value;
}

}  // namespace

FrequencyTable discretize(std::span<const double> values, const DiscretizationSpec& spec) {
  if (!(spec.delta > 0.0) || !std::isfinite(spec.delta))
    throw InvalidDeltaError("bin width delta must be positive");
  if (values.empty()) throw EmptySampleError();

  std::map<std::int64_t, std::uint64_t> bins;
  for (double x : values) {
    if (!std::isfinite(x)) throw InvalidArgumentError("non-finite observation");
    std::int64_t key;
    if (spec.tail_side == TailSide::Right) {
      key = x < 0.0 ? kAggregateBin
                    : static_cast<std::int64_t>(std::floor(x / spec.delta));
    } else {
      key = x >= 0.0 ? kAggregateBin
                     : static_cast<std::int64_t>(std::floor(-x / spec.delta));
    }
    ++bins[key];
  }
  std::vector<std::uint64_t> counts;
  counts.reserve(bins.size());
  for (const auto& [key, count] : bins) counts.push_back(count);
  return FrequencyTable::from_counts(std::move(counts));
}

std::vector<double> load_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<double> values;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const std::string body = strip(line);
    if (body.empty()) continue;
    values.push_back(parse_real(body, lineno));
  }
  return values;
}

FrequencyTable load_counts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::map<std::string, std::uint64_t> tallies;
  std::string line;
  bool first_row = true;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const std::string body = strip(line);
    if (body.empty()) continue;
    const auto comma = body.find(',');
    if (comma == std::string::npos)
      throw ParseError("expected symbol,count", lineno);
    const std::string symbol = body.substr(0, comma);
    const std::string count_text = body.substr(comma + 1);
    if (first_row && symbol == "symbol" && count_text == "count") {
      first_row = false;
      continue;  // optional header
    }
    first_row = false;
    tallies[symbol] += parse_count(count_text, lineno);
  }
  if (tallies.empty()) throw EmptySampleError();
  std::vector<std::uint64_t> counts;
  counts.reserve(tallies.size());
  for (const auto& [symbol, count] : tallies) counts.push_back(count);
  return FrequencyTable::from_counts(std::move(counts));
}

}  // namespace tailscope
