#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "tailscope/frequency_table.hpp"

namespace tailscope {

enum class TailSide { Left, Right };

// Fixed-width binning of real observations for one tail.
//   Right: x >= 0 goes to bin floor(x/delta); negatives collapse into one
//          aggregate class.
//   Left:  x < 0 goes to bin floor(-x/delta); x >= 0 collapses into one
//          aggregate class.
struct DiscretizationSpec {
  double delta = 1e-4;
  TailSide tail_side = TailSide::Right;
};

FrequencyTable discretize(std::span<const double> values, const DiscretizationSpec& spec);

// One decimal value per line; blank lines and '#' comments allowed.
std::vector<double> load_values(const std::filesystem::path& path);

// CSV of `symbol,count` rows (header optional, counts positive integers).
// Counts for a repeated symbol accumulate.
FrequencyTable load_counts(const std::filesystem::path& path);

}  // namespace tailscope
