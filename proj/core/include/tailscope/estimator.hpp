#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tailscope/frequency_table.hpp"

namespace tailscope {

// Estimated tail profile: T_v for consecutive integer orders v in
// [v_min, v_max]. Values are nonnegative by construction.
class TailProfile {
 public:
  TailProfile(std::int64_t v_min, std::vector<double> values);

  std::int64_t v_min() const { return v_min_; }
  std::int64_t v_max() const { return v_min_ + static_cast<std::int64_t>(values_.size()) - 1; }
  std::size_t size() const { return values_.size(); }
  double at(std::int64_t v) const;
  std::span<const double> values() const { return values_; }

  // Restriction to [v1, v2]; throws InvalidRangeError if not covered.
  TailProfile slice(std::int64_t v1, std::int64_t v2) const;

 private:
  std::int64_t v_min_;
  std::vector<double> values_;
};

// Unbiased estimator of the entropic moment zeta_v = sum_k p_k (1-p_k)^v,
// evaluated in the numerically stable ratio-product form
//   Z_v = sum_k (Y_k/n) * prod_{j=1..v} (1 - (Y_k-1)/(n-j)).
// A term whose running factor reaches exactly zero contributes nothing.
// Requires 1 <= v <= n-1.
double z_statistic(const FrequencyTable& ft, std::int64_t v);

// Tail index estimate T_v = v * Z_v.
double tail_index_estimate(const FrequencyTable& ft, std::int64_t v);

// T_v for every v in [v1, v2], computed in a single sweep that shares the
// running products across orders. Requires 1 <= v1 < v2 <= n-1.
TailProfile tail_profile(const FrequencyTable& ft, std::int64_t v1, std::int64_t v2);

}  // namespace tailscope
