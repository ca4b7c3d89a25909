#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tailscope/errors.hpp"

namespace tailscope {

// Frequency summary of an i.i.d. sample over a discrete alphabet: the
// multiset of per-symbol counts plus the sample size. Symbol identity is
// deliberately not retained; everything downstream depends only on the
// counts. Immutable after construction, safe for shared concurrent reads.
class FrequencyTable {
 public:
  // Builds a table directly from positive per-symbol counts.
  static FrequencyTable from_counts(std::vector<std::uint64_t> counts);

  std::uint64_t n() const { return n_; }
  std::size_t distinct_symbols() const { return counts_.size(); }
  std::span<const std::uint64_t> counts() const { return counts_; }

  // Number of symbols observed exactly r times (N_r). r = 0 is rejected:
  // unseen symbols are not enumerable. r > n returns 0.
  std::uint64_t occupancy_count(std::uint64_t r) const;

  // Turing's estimate of the missing probability, N_1 / n.
  double turing_estimate() const;

 private:
  explicit FrequencyTable(std::vector<std::uint64_t> counts, std::uint64_t n)
      : counts_(std::move(counts)), n_(n) {}

  std::vector<std::uint64_t> counts_;  // ascending, every entry >= 1
  std::uint64_t n_ = 0;
};

// Tallies an observation sequence into a FrequencyTable.
FrequencyTable build_frequency_table(std::span<const std::int64_t> observations);
FrequencyTable build_frequency_table(std::span<const std::string> observations);

}  // namespace tailscope
