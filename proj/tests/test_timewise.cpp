// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <map>
#include <vector>

#include <doctest.h>

#include "dynaprune/error.hpp"
#include "dynaprune/rng.hpp"
#include "dynaprune/timewise.hpp"
#include "oracles.hpp"

using namespace dynaprune;

TEST_CASE("point drop with L = T keeps everything in order") {
  Rng rng(1);
  const auto kept = draw_point_kept(5, 5, rng);
  CHECK(kept == std::vector<std::uint32_t>{0, 1, 2, 3, 4});
}

TEST_CASE("point drop validates L") {
  Rng rng(1);
  CHECK_THROWS_AS(draw_point_kept(3, 0, rng), ArgumentError);
  CHECK_THROWS_AS(draw_point_kept(3, 4, rng), ArgumentError);
}

TEST_CASE("point drop L=1 of three picks each sample a third of the time") {
  // Brute force: outcomes are {0}, {1}, {2}, each with probability 1/3.
  std::map<std::uint32_t, int> counts;
  const int trials = 3000;
  for (int seed = 0; seed < trials; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed) + 50);
    const auto kept = draw_point_kept(3, 1, rng);
    REQUIRE(kept.size() == 1);
    counts[kept[0]]++;
  }
  const double p = 1.0 / 3.0;
  const double sigma = std::sqrt(p * (1 - p) / trials);
  CHECK(counts.size() == 3);
  for (const auto& [idx, count] : counts) {
    CHECK(std::abs(static_cast<double>(count) / trials - p) <= 3.0 * sigma);
  }
}

TEST_CASE("point drop T=4 L=2 is uniform over the six subsets") {
  const auto subsets = test_oracle::enumerate_subsets(4, 2);
  REQUIRE(subsets.size() == 6);
  std::map<std::vector<std::uint32_t>, int> counts;
  const int trials = 6000;
  for (int seed = 0; seed < trials; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed) + 900);
    counts[draw_point_kept(4, 2, rng)]++;
  }
  CHECK(counts.size() == 6);
  const double p = 1.0 / 6.0;
  const double sigma = std::sqrt(p * (1 - p) / trials);
  for (const auto& [subset, count] : counts) {
    CHECK(std::abs(static_cast<double>(count) / trials - p) <= 3.0 * sigma);
  }
}

TEST_CASE("chunk count follows round((T - L) / n)") {
  CHECK(chunk_count(10, 6, 2) == 2);
  CHECK(chunk_count(16000, 11200, 160) == 30);
  CHECK(chunk_count(10, 10, 2) == 0);
  CHECK(chunk_count(10, 7, 2) == 2);  // 1.5 rounds away from zero
}

TEST_CASE("chunk drop removes exactly c*n samples in order") {
  Rng rng(3);
  const auto kept = draw_chunk_kept(10, 6, 2, rng);
  CHECK(kept.size() == 6);
  CHECK(std::is_sorted(kept.begin(), kept.end()));
  Rng rng2(4);
  const auto kept2 = draw_chunk_kept(16000, 11200, 160, rng2);
  CHECK(kept2.size() == 16000 - 30 * 160);
}

TEST_CASE("chunk drop with L = T is the identity") {
  Rng rng(5);
  const auto kept = draw_chunk_kept(8, 8, 3, rng);
  CHECK(kept.size() == 8);
  CHECK(kept.front() == 0);
  CHECK(kept.back() == 7);
}

TEST_CASE("chunk drop rejects infeasible parameter combinations") {
  Rng rng(6);
  // c = round((9 - 1) / 2) = 4 chunks of 2 fit in 9 samples.
  CHECK_NOTHROW(draw_chunk_kept(9, 1, 2, rng));
  CHECK_THROWS_AS(draw_chunk_kept(9, 0, 2, rng), ArgumentError);
  // T = 6, L = 1, n = 7: c = round(5/7) = 1 chunk of 7 cannot fit in 6.
  CHECK_THROWS_AS(draw_chunk_kept(6, 1, 7, rng), ArgumentError);
}

TEST_CASE("chunk placements are uniform over all disjoint arrangements") {
  // T=6, L=2, n=2: c=2, six valid placements by brute force enumeration.
  const auto placements = test_oracle::enumerate_chunk_placements(6, 2, 2);
  std::vector<std::vector<std::uint32_t>> valid;
  for (const auto& starts : placements) {
    valid.push_back(test_oracle::kept_from_chunk_starts(6, starts, 2));
  }
  REQUIRE(valid.size() == 6);
  std::map<std::vector<std::uint32_t>, int> counts;
  const int trials = 10000;
  for (int seed = 0; seed < trials; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed) + 31337);
    counts[draw_chunk_kept(6, 2, 2, rng)]++;
  }
  CHECK(counts.size() == 6);
  for (const auto& [kept, count] : counts) {
    CHECK(std::find(valid.begin(), valid.end(), kept) != valid.end());
  }
  const double p = 1.0 / 6.0;
  const double sigma = std::sqrt(p * (1 - p) / trials);
  for (const auto& [kept, count] : counts) {
    CHECK(std::abs(static_cast<double>(count) / trials - p) <= 3.0 * sigma);
  }
}

TEST_CASE("chunk drop structure holds on random triples") {
  Rng meta(777);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t total = 2 + meta.below(2000);
    const std::size_t kept_target = 1 + meta.below(total);
    const std::size_t n = 1 + meta.below(64);
    const std::size_t c = chunk_count(total, kept_target, n);
    if (c * n > total) continue;
    Rng rng(meta.next_u64());
    const auto kept = draw_chunk_kept(total, kept_target, n, rng);
    CHECK(kept.size() == total - c * n);
    CHECK(std::is_sorted(kept.begin(), kept.end()));
    const auto runs = test_oracle::removed_run_lengths(total, kept);
    std::size_t removed_total = 0;
    for (const std::size_t run : runs) {
      CHECK(run % n == 0);  // abutting chunks merge into multiples of n
      removed_total += run;
    }
    CHECK(removed_total == c * n);
    CHECK(runs.size() <= c);
  }
}

TEST_CASE("masking changes values only, never length") {
  Rng rng(12);
  std::vector<float> original(16000);
  for (float& v : original) v = static_cast<float>(rng.range(0.5, 1.0));
  std::vector<float> masked = original;
  MaskSpec spec;  // 0.4 s cap, 1 mask per second
  Rng mask_rng(55);
  apply_time_mask(masked, 16000, spec, mask_rng);
  REQUIRE(masked.size() == original.size());
  std::size_t zeroed = 0;
  for (std::size_t i = 0; i < masked.size(); ++i) {
    const bool same = masked[i] == original[i];
    const bool zero = masked[i] == 0.0f;
    CHECK((same || zero));
    zeroed += zero;
  }
  // 1 mask of at most 0.4 s over 1 s: bounded fraction.
  CHECK(zeroed <= 6400);
  CHECK(zeroed >= 1);
}

TEST_CASE("mask count rounds to zero for tiny rates") {
  std::vector<float> x(8000, 0.5f);
  MaskSpec spec;
  spec.masks_per_second = 0.1;  // 0.05 masks in half a second -> 0
  Rng rng(9);
  apply_time_mask(x, 16000, spec, rng);
  CHECK(std::all_of(x.begin(), x.end(), [](float v) { return v == 0.5f; }));
}

TEST_CASE("max mask run at 16 kHz with the 0.4 s default is 6400 samples") {
  // A single mask cannot zero more than 0.4 s * 16000 Hz = 6400 samples.
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::vector<float> x(32000, 1.0f);
    MaskSpec spec;
    spec.masks_per_second = 0.5;  // exactly one mask over two seconds
    Rng rng(seed);
    apply_time_mask(x, 16000, spec, rng);
    std::size_t longest = 0;
    std::size_t run = 0;
    std::size_t zeroed = 0;
    for (const float v : x) {
      run = v == 0.0f ? run + 1 : 0;
      longest = std::max(longest, run);
      zeroed += v == 0.0f;
    }
    CHECK(longest <= 6400);
    CHECK(longest == zeroed);  // one contiguous mask
    CHECK(longest >= 1);
  }
}

TEST_CASE("dropping and masking are deterministic given the seed") {
  for (int i = 0; i < 3; ++i) {
    Rng a(4242);
    Rng b(4242);
    CHECK(draw_point_kept(1000, 700, a) == draw_point_kept(1000, 700, b));
    Rng c(4242);
    Rng d(4242);
    CHECK(draw_chunk_kept(1000, 700, 32, c) == draw_chunk_kept(1000, 700, 32, d));
    std::vector<float> xa(500, 1.0f);
    std::vector<float> xb(500, 1.0f);
    Rng e(4242);
    Rng f(4242);
    MaskSpec spec;
    spec.masks_per_second = 10.0;
    apply_time_mask(xa, 1000, spec, e);
    apply_time_mask(xb, 1000, spec, f);
    CHECK(xa == xb);
  }
}
