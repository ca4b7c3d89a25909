#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tailscope/classifier.hpp"
#include "tailscope/distributions.hpp"

namespace tailscope {

// Monte Carlo study layout: every (distribution, sample size) cell runs
// `reps` classified trials. Per-trial seeds derive from master_seed via
// mix_seed, so results do not depend on scheduling.
struct StudyConfig {
  std::vector<TonicDistribution> distributions;
  std::vector<std::int64_t> sample_sizes;
  std::int64_t reps = 1;
  std::uint64_t master_seed = 1;
  double flat_threshold = ClassifierConfig{}.flat_threshold;
  // When unset, each n uses ClassifierConfig::defaults_for(n).
  std::optional<std::pair<std::int64_t, std::int64_t>> window;

  ClassifierConfig classifier_for(std::int64_t n) const;
  void validate() const;
};

// Counts of predicted families per (true distribution, sample size) cell.
class ConfusionMatrix {
 public:
  struct Cell {
    TailFamily truth;
    std::string dist_spec;
    std::int64_t n = 0;
    std::array<std::uint64_t, 4> predicted{};  // indexed by TailFamily

    std::uint64_t row_sum() const;
    double accuracy() const;  // fraction predicted == truth
  };

  explicit ConfusionMatrix(std::vector<Cell> cells) : cells_(std::move(cells)) {}

  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(std::size_t dist_index, std::int64_t n) const;

 private:
  std::vector<Cell> cells_;
};

// Sample -> frequency table -> tail profile -> classification; fully
// determined by the inputs.
TailClassification run_trial(const TonicDistribution& dist, std::int64_t n,
                             const ClassifierConfig& config, std::uint64_t seed);

// Runs every cell of the study. threads = 0 picks the TAILSCOPE_THREADS
// environment variable, falling back to hardware concurrency; results are
// bitwise identical for any thread count.
ConfusionMatrix run_study(const StudyConfig& config, unsigned threads = 0);

// Per-family precision at one sample size: P(truth == f | predicted == f).
// Families never predicted are reported as nullopt.
struct PrecisionSummary {
  std::int64_t n = 0;
  std::array<std::optional<double>, 4> precision{};  // indexed by TailFamily
};

PrecisionSummary precision_summary(const ConfusionMatrix& cm, std::int64_t n);

// Thread cap from TAILSCOPE_THREADS (0 when unset or unparsable).
unsigned env_thread_cap();

}  // namespace tailscope
