#include "tailscope/frequency_table.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace tailscope {

FrequencyTable FrequencyTable::from_counts(std::vector<std::uint64_t> counts) {
  if (counts.empty()) throw EmptySampleError();
  for (auto c : counts) {
    if (c == 0) throw InvalidArgumentError("stored counts must be positive");
  }
  std::sort(counts.begin(), counts.end());
  const std::uint64_t n =
      std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  return FrequencyTable(std::move(counts), n);
}

std::uint64_t FrequencyTable::occupancy_count(std::uint64_t r) const {
  if (r == 0) throw InvalidArgumentError("occupancy count is undefined for r = 0");
  auto [lo, hi] = std::equal_range(counts_.begin(), counts_.end(), r);
  return static_cast<std::uint64_t>(hi - lo);
}

double FrequencyTable::turing_estimate() const {
  return static_cast<double>(occupancy_count(1)) / static_cast<double>(n_);
}

namespace {

template <typename Symbol>
FrequencyTable tally(std::span<const Symbol> observations) {
  if (observations.empty()) throw EmptySampleError();
  std::map<Symbol, std::uint64_t> multiplicities;
  for (const auto& s : observations) ++multiplicities[s];
  std::vector<std::uint64_t> counts;
  counts.reserve(multiplicities.size());
  for (const auto& [symbol, count] : multiplicities) counts.push_back(count);
  return FrequencyTable::from_counts(std::move(counts));
}

}  // namespace

FrequencyTable build_frequency_table(std::span<const std::int64_t> observations) {
  return tally(observations);
}

FrequencyTable build_frequency_table(std::span<const std::string> observations) {
  return tally(observations);
}

}  // namespace tailscope
