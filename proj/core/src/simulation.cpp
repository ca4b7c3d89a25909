#include "tailscope/simulation.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "tailscope/rng.hpp"

namespace tailscope {

ClassifierConfig StudyConfig::classifier_for(std::int64_t n) const {
  ClassifierConfig cfg;
  if (window) {
    cfg.v1 = window->first;
    cfg.v2 = window->second;
  } else {
    cfg = ClassifierConfig::defaults_for(static_cast<std::uint64_t>(n));
  }
  cfg.flat_threshold = flat_threshold;
  return cfg;
}

void StudyConfig::validate() const {
  if (reps < 1) throw InvalidArgumentError("study needs reps >= 1");
  if (distributions.empty()) throw InvalidArgumentError("study needs at least one distribution");
  if (sample_sizes.empty()) throw InvalidArgumentError("study needs at least one sample size");
  for (std::int64_t n : sample_sizes) {
    const auto cfg = classifier_for(n);
    if (n < cfg.v2 + 1)
      throw InvalidRangeError("sample size " + std::to_string(n) +
                              " cannot support a profile up to v = " + std::to_string(cfg.v2));
  }
}

std::uint64_t ConfusionMatrix::Cell::row_sum() const {
  std::uint64_t total = 0;
  for (auto c : predicted) total += c;
  return total;
}

double ConfusionMatrix::Cell::accuracy() const {
  const std::uint64_t total = row_sum();
  if (total == 0) return 0.0;
  return static_cast<double>(predicted[static_cast<std::size_t>(truth)]) /
         static_cast<double>(total);
}

const ConfusionMatrix::Cell& ConfusionMatrix::cell(std::size_t dist_index,
                                                   std::int64_t n) const {
  std::size_t seen = 0;
  for (const auto& c : cells_) {
    if (c.n != n) continue;
    if (seen == dist_index) return c;
    ++seen;
  }
  throw InvalidArgumentError("no study cell for that distribution and sample size");
}

TailClassification run_trial(const TonicDistribution& dist, std::int64_t n,
                             const ClassifierConfig& config, std::uint64_t seed) {
  const auto draws = dist.sample(n, seed);
  const auto table = build_frequency_table(std::span<const std::int64_t>(draws));
  const auto profile = tail_profile(table, config.v1, config.v2);
  return classify(profile, config);
}

unsigned env_thread_cap() {
  const char* raw = std::getenv("TAILSCOPE_THREADS");
  if (raw == nullptr) return 0;
  char* end = nullptr;
  const unsigned long parsed = std::strtoul(raw, &end, 10);
  if (end == raw || *end != '\0') return 0;
  return static_cast<unsigned>(parsed);
}

ConfusionMatrix run_study(const StudyConfig& config, unsigned threads) {
  config.validate();

  struct Task {
    std::size_t dist_index;
    std::size_t n_index;
    std::int64_t trial;
  };
  std::vector<Task> tasks;
  tasks.reserve(config.distributions.size() * config.sample_sizes.size() *
                static_cast<std::size_t>(config.reps));
  for (std::size_t d = 0; d < config.distributions.size(); ++d)
    for (std::size_t s = 0; s < config.sample_sizes.size(); ++s)
      for (std::int64_t t = 0; t < config.reps; ++t) tasks.push_back({d, s, t});

  if (threads == 0) threads = env_thread_cap();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));

  // One slot per trial; aggregation happens after the join, so the result is
  // identical for every thread count.
  std::vector<std::uint8_t> outcome(tasks.size(), 0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& task = tasks[i];
      try {
        const std::int64_t n = config.sample_sizes[task.n_index];
        const auto cfg = config.classifier_for(n);
        const auto seed = mix_seed(config.master_seed, task.dist_index,
                                   static_cast<std::uint64_t>(n),
                                   static_cast<std::uint64_t>(task.trial));
        const auto cls = run_trial(config.distributions[task.dist_index], n, cfg, seed);
        outcome[i] = static_cast<std::uint8_t>(cls.family);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ConfusionMatrix::Cell> cells;
  cells.reserve(config.distributions.size() * config.sample_sizes.size());
  for (std::size_t d = 0; d < config.distributions.size(); ++d) {
    for (std::size_t s = 0; s < config.sample_sizes.size(); ++s) {
      ConfusionMatrix::Cell cell;
      cell.truth = config.distributions[d].family();
      cell.dist_spec = config.distributions[d].spec_string();
      cell.n = config.sample_sizes[s];
      cells.push_back(cell);
    }
  }
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const Task& task = tasks[i];
    auto& cell = cells[task.dist_index * config.sample_sizes.size() + task.n_index];
    ++cell.predicted[outcome[i]];
  }
  return ConfusionMatrix(std::move(cells));
}

PrecisionSummary precision_summary(const ConfusionMatrix& cm, std::int64_t n) {
  PrecisionSummary summary;
  summary.n = n;
  bool any = false;
  for (std::size_t f = 0; f < 4; ++f) {
    std::uint64_t predicted = 0, correct = 0;
    for (const auto& cell : cm.cells()) {
      if (cell.n != n) continue;
      any = true;
      predicted += cell.predicted[f];
      if (static_cast<std::size_t>(cell.truth) == f) correct += cell.predicted[f];
    }
    if (predicted > 0)
      summary.precision[f] = static_cast<double>(correct) / static_cast<double>(predicted);
  }
  if (!any) throw InvalidArgumentError("no study cells with n = " + std::to_string(n));
  return summary;
}

}  // namespace tailscope
