#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracle_helpers.hpp"
#include "tailscope/estimator.hpp"
#include "tailscope/rng.hpp"

using namespace tailscope;

namespace {

std::vector<std::uint64_t> random_counts(Xoshiro256pp& rng, std::uint64_t max_n) {
  for (;;) {
    std::vector<std::uint64_t> counts;
    const std::size_t m = 1 + rng.next() % 20;
    std::uint64_t n = 0;
    for (std::size_t i = 0; i < m; ++i) {
      counts.push_back(1 + rng.next() % 30);
      n += counts.back();
    }
    if (n >= 2 && n <= max_n) return counts;
  }
}

}  // namespace

TEST_CASE("moment statistic on small tables") {
  const auto ft = FrequencyTable::from_counts({2, 1, 1});  // n = 4
  CHECK(z_statistic(ft, 1) == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
  CHECK(z_statistic(ft, 3) == doctest::Approx(0.5).epsilon(1e-14));

  const auto one_letter = FrequencyTable::from_counts({4});
  CHECK(z_statistic(one_letter, 1) == 0.0);
  CHECK(z_statistic(one_letter, 2) == 0.0);

  CHECK_THROWS_AS(z_statistic(ft, 0), IndexOutOfRangeError);
  CHECK_THROWS_AS(z_statistic(ft, 4), IndexOutOfRangeError);
}

TEST_CASE("tail index estimate scales the moment by v") {
  const auto ft = FrequencyTable::from_counts({2, 1, 1});
  CHECK(tail_index_estimate(ft, 3) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(tail_index_estimate(ft, 1) == doctest::Approx(z_statistic(ft, 1)).epsilon(1e-15));
  const auto one_letter = FrequencyTable::from_counts({4});
  for (std::int64_t v = 1; v <= 3; ++v) CHECK(tail_index_estimate(one_letter, v) == 0.0);
}

TEST_CASE("profile agrees with the pointwise estimator") {
  const auto ft = FrequencyTable::from_counts({2, 1, 1});
  const auto profile = tail_profile(ft, 1, 3);
  CHECK(profile.v_min() == 1);
  CHECK(profile.v_max() == 3);
  CHECK(profile.at(1) == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
  CHECK(profile.at(2) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(profile.at(3) == doctest::Approx(1.5).epsilon(1e-14));

  Xoshiro256pp rng(321);
  for (int rep = 0; rep < 30; ++rep) {
    const auto table = FrequencyTable::from_counts(random_counts(rng, 120));
    const std::int64_t n = static_cast<std::int64_t>(table.n());
    const auto p = tail_profile(table, 1, n - 1);
    for (std::int64_t v = 1; v <= n - 1; ++v)
      CHECK(p.at(v) == doctest::Approx(tail_index_estimate(table, v)).epsilon(1e-13));
  }
}

TEST_CASE("profile range validation") {
  const auto ft = FrequencyTable::from_counts({2, 1, 1});
  CHECK_THROWS_AS(tail_profile(ft, 5, 3), InvalidRangeError);
  CHECK_THROWS_AS(tail_profile(ft, 1, 4), InvalidRangeError);  // v2 = n
  CHECK_THROWS_AS(tail_profile(ft, 0, 3), InvalidRangeError);
  CHECK_THROWS_AS(tail_profile(ft, 2, 2), InvalidRangeError);
}

TEST_CASE("exhaustive unbiasedness on a three-letter alphabet") {
  const std::array<double, 3> p{0.5, 0.3, 0.2};
  const int n = 5;
  for (std::int64_t v = 1; v <= 4; ++v) {
    const double expected = oracle::expected_over_multinomial3(
        p, n, [v](const std::vector<std::uint64_t>& counts) {
          return z_statistic(FrequencyTable::from_counts(counts), v);
        });
    CHECK(expected == doctest::Approx(oracle::zeta_finite(p, v)).epsilon(1e-12));
  }
  CHECK(oracle::zeta_finite(p, 2) == doctest::Approx(0.400).epsilon(1e-13));
}

TEST_CASE("order n-1 reduces to the singleton count") {
  Xoshiro256pp rng(777);
  for (int rep = 0; rep < 300; ++rep) {
    const auto ft = FrequencyTable::from_counts(random_counts(rng, 200));
    const double n = static_cast<double>(ft.n());
    const double expected = (n - 1.0) * static_cast<double>(ft.occupancy_count(1)) / n;
    CHECK(tail_index_estimate(ft, ft.n() - 1) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("stable product form matches exact rational evaluation") {
  // exhaustively for small n
  for (std::uint64_t n = 2; n <= 9; ++n) {
    for (const auto& counts : oracle::partitions_of(n)) {
      for (std::int64_t v = 1; v < static_cast<std::int64_t>(n); ++v) {
        const double exact = oracle::to_double(oracle::z_statistic_literal(counts, v));
        const auto ft = FrequencyTable::from_counts(counts);
        CHECK(std::abs(z_statistic(ft, v) - exact) < 1e-10);
      }
    }
  }
  // random tables up to n = 30
  Xoshiro256pp rng(2024);
  for (int rep = 0; rep < 120; ++rep) {
    const auto counts = random_counts(rng, 30);
    const auto ft = FrequencyTable::from_counts(counts);
    for (std::int64_t v = 1; v < static_cast<std::int64_t>(ft.n()); ++v) {
      const double exact = oracle::to_double(oracle::z_statistic_literal(counts, v));
      CHECK(std::abs(z_statistic(ft, v) - exact) < 1e-10);
    }
  }
}

TEST_CASE("moment statistic is nonnegative, zero exactly when exhausted") {
  Xoshiro256pp rng(55);
  for (int rep = 0; rep < 100; ++rep) {
    const auto ft = FrequencyTable::from_counts(random_counts(rng, 60));
    const std::int64_t n = static_cast<std::int64_t>(ft.n());
    for (std::int64_t v = 1; v < n; ++v) {
      const double z = z_statistic(ft, v);
      CHECK(z >= 0.0);
      bool all_exhausted = true;
      for (auto c : ft.counts())
        all_exhausted = all_exhausted &&
                        static_cast<std::int64_t>(c) >= n - v + 1;
      CHECK((z == 0.0) == all_exhausted);
    }
  }
}

TEST_CASE("profile depends only on the count multiset") {
  // same multiset assembled from different symbol streams
  std::vector<std::int64_t> obs_a = {7, 7, 7, 1, 2, 2};
  std::vector<std::int64_t> obs_b = {-4, 10, 10, 9, 9, 9};
  const auto fa = build_frequency_table(std::span<const std::int64_t>(obs_a));
  const auto fb = build_frequency_table(std::span<const std::int64_t>(obs_b));
  const auto pa = tail_profile(fa, 1, 5);
  const auto pb = tail_profile(fb, 1, 5);
  for (std::int64_t v = 1; v <= 5; ++v) CHECK(pa.at(v) == pb.at(v));
}

TEST_CASE("profile slicing") {
  const auto ft = FrequencyTable::from_counts({3, 2, 2, 1, 1, 1});
  const auto p = tail_profile(ft, 1, 9);
  const auto s = p.slice(3, 7);
  CHECK(s.v_min() == 3);
  CHECK(s.v_max() == 7);
  for (std::int64_t v = 3; v <= 7; ++v) CHECK(s.at(v) == p.at(v));
  CHECK_THROWS_AS(p.slice(0, 5), InvalidRangeError);
  CHECK_THROWS_AS(p.slice(5, 12), InvalidRangeError);
}
