#include "tailscope/estimator.hpp"

#include <string>
#include <utility>

namespace tailscope {

TailProfile::TailProfile(std::int64_t v_min, std::vector<double> values)
    : v_min_(v_min), values_(std::move(values)) {
  if (v_min_ < 1) throw InvalidRangeError("profile must start at v >= 1");
  if (values_.empty()) throw InvalidRangeError("profile must be non-empty");
  for (double t : values_) {
    if (!(t >= 0.0)) throw InvalidArgumentError("profile values must be nonnegative");
  }
}

double TailProfile::at(std::int64_t v) const {
  if (v < v_min() || v > v_max())
    throw IndexOutOfRangeError("profile order " + std::to_string(v) + " outside range");
  return values_[static_cast<std::size_t>(v - v_min_)];
}

TailProfile TailProfile::slice(std::int64_t v1, std::int64_t v2) const {
  if (v1 > v2 || v1 < v_min() || v2 > v_max())
    throw InvalidRangeError("profile does not cover requested range");
  auto first = values_.begin() + (v1 - v_min_);
  return TailProfile(v1, std::vector<double>(first, first + (v2 - v1 + 1)));
}

namespace {

struct CountGroup {
  double count;         // Y
  double multiplicity;  // number of symbols with this count
  double running;       // prod_{j<=v} (1 - (Y-1)/(n-j)), 0 once exhausted
};

// Shared sweep for z_statistic and tail_profile. Symbols with equal counts
// contribute identically, so the sum is grouped by distinct count value.
// Accumulation is Kahan-compensated; factors live in [0,1] and hit exact
// zero at j = n - Y + 1.
std::vector<double> sweep(const FrequencyTable& ft, std::int64_t v1, std::int64_t v2) {
  const double n = static_cast<double>(ft.n());

  std::vector<CountGroup> groups;
  const auto counts = ft.counts();  // ascending
  for (std::size_t i = 0; i < counts.size();) {
    std::size_t j = i;
    while (j < counts.size() && counts[j] == counts[i]) ++j;
    groups.push_back({static_cast<double>(counts[i]), static_cast<double>(j - i), 1.0});
    i = j;
  }

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(v2 - v1 + 1));
  for (std::int64_t v = 1; v <= v2; ++v) {
    const double denom = n - static_cast<double>(v);
    for (auto& g : groups) {
      if (g.running == 0.0) continue;
      const double factor = 1.0 - (g.count - 1.0) / denom;
      g.running = factor <= 0.0 ? 0.0 : g.running * factor;
    }
    if (v >= v1) {
      double sum = 0.0, comp = 0.0;
      for (const auto& g : groups) {
        if (g.running == 0.0) continue;
        const double term = g.multiplicity * (g.count / n) * g.running;
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
      }
      out.push_back(static_cast<double>(v) * sum);
    }
  }
  return out;
}

void check_order(const FrequencyTable& ft, std::int64_t v) {
  if (v < 1 || v > static_cast<std::int64_t>(ft.n()) - 1)
    throw IndexOutOfRangeError("order v must satisfy 1 <= v <= n-1 (v = " +
                               std::to_string(v) + ", n = " + std::to_string(ft.n()) + ")");
}

}  // namespace

double z_statistic(const FrequencyTable& ft, std::int64_t v) {
  check_order(ft, v);
  return sweep(ft, v, v).front() / static_cast<double>(v);
}

double tail_index_estimate(const FrequencyTable& ft, std::int64_t v) {
  check_order(ft, v);
  return sweep(ft, v, v).front();
}

TailProfile tail_profile(const FrequencyTable& ft, std::int64_t v1, std::int64_t v2) {
  if (v1 < 1 || v1 >= v2 || v2 > static_cast<std::int64_t>(ft.n()) - 1)
    throw InvalidRangeError("profile range must satisfy 1 <= v1 < v2 <= n-1");
  return TailProfile(v1, sweep(ft, v1, v2));
}

}  // namespace tailscope
