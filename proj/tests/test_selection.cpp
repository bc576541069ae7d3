// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "dynaprune/error.hpp"
#include "dynaprune/selection.hpp"
#include "oracles.hpp"

using namespace dynaprune;

namespace {

using Snapshot = std::vector<std::pair<std::string, double>>;

Snapshot abcd_scores() {
  return {{"a", 0.1}, {"b", 0.5}, {"c", 0.9}, {"d", 0.2}};
}

std::vector<std::string> run_policy(PolicyKind policy, const Snapshot& snap,
                                    double k, int epoch, int total,
                                    std::uint64_t seed) {
  SelectionConfig config;
  config.policy = policy;
  config.kept_ratio = k;
  if (policy == PolicyKind::Easy2hard) config.epsilon = EpsilonSchedule{};
  Selector selector(config);
  Rng rng(seed);
  return selector.select(snap, epoch, total, rng);
}

}  // namespace

TEST_CASE("kept_count follows round-half-up with a floor of one") {
  CHECK(kept_count(10, 0.5) == 5);
  CHECK(kept_count(3, 0.5) == 2);  // 1.5 rounds up
  CHECK(kept_count(7, 1.0) == 7);
  CHECK(kept_count(1, 1.0) == 1);
  CHECK(kept_count(100, 0.001) == 1);  // floor of 1
  CHECK(kept_count(2000, 0.3) == 600);
  CHECK_THROWS_AS(kept_count(0, 0.5), ArgumentError);
  CHECK_THROWS_AS(kept_count(10, 0.0), ArgumentError);
  CHECK_THROWS_AS(kept_count(10, 1.5), ArgumentError);
}

TEST_CASE("epsilon schedule anchors at 1 and decays linearly to the end value") {
  EpsilonSchedule schedule{1.0, 1.0 / 3.0, 75};
  CHECK(epsilon_at(schedule, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(epsilon_at(schedule, 74) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  // midpoint: 1 - (2/3) * (37/74) = 2/3
  CHECK(epsilon_at(schedule, 37) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(epsilon_at(schedule, 75), ArgumentError);
  CHECK_THROWS_AS(epsilon_at(schedule, -1), ArgumentError);
  EpsilonSchedule single{1.0, 1.0 / 3.0, 1};
  CHECK(epsilon_at(single, 0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("easy keeps the lowest-score half, hard the highest") {
  const auto easy = run_policy(PolicyKind::Easy, abcd_scores(), 0.5, 0, 10, 1);
  CHECK(easy == std::vector<std::string>{"a", "d"});
  const auto hard = run_policy(PolicyKind::Hard, abcd_scores(), 0.5, 0, 10, 1);
  CHECK(hard == std::vector<std::string>{"b", "c"});
}

TEST_CASE("easy and hard at k=0.5 partition a dataset with distinct scores") {
  const Snapshot snap = {{"a", 0.3}, {"b", 0.9}, {"c", 0.1}, {"d", 0.7},
                         {"e", 0.5}, {"f", 0.2}};
  auto easy = run_policy(PolicyKind::Easy, snap, 0.5, 0, 1, 1);
  auto hard = run_policy(PolicyKind::Hard, snap, 0.5, 0, 1, 1);
  std::vector<std::string> both;
  std::merge(easy.begin(), easy.end(), hard.begin(), hard.end(),
             std::back_inserter(both));
  CHECK(both == std::vector<std::string>{"a", "b", "c", "d", "e", "f"});
}

TEST_CASE("easy and hard match the exhaustive sort oracle on small datasets") {
  Rng rng(42);
  for (std::size_t n = 1; n <= 12; ++n) {
    for (int tenths = 1; tenths <= 10; ++tenths) {
      const double k = tenths / 10.0;
      for (int rep = 0; rep < 6; ++rep) {
        Snapshot snap;
        for (std::size_t i = 0; i < n; ++i) {
          // Coarse grid of scores makes ties common.
          const double score = static_cast<double>(rng.below(4)) / 4.0;
          snap.emplace_back("id" + std::to_string(i), score);
        }
        const auto m = static_cast<std::size_t>(kept_count(n, k));
        const auto easy = run_policy(PolicyKind::Easy, snap, k, 0, 1, 7);
        CHECK(easy == test_oracle::sort_select(snap, m, false));
        const auto hard = run_policy(PolicyKind::Hard, snap, k, 0, 1, 7);
        CHECK(hard == test_oracle::sort_select(snap, m, true));
      }
    }
  }
}

TEST_CASE("easy2hard at epoch 0 equals random under a shared rng stream") {
  const Snapshot snap = abcd_scores();
  for (const std::uint64_t seed : {1ULL, 9ULL, 77ULL}) {
    const auto random = run_policy(PolicyKind::Random, snap, 0.5, 0, 10, seed);
    const auto e2h = run_policy(PolicyKind::Easy2hard, snap, 0.5, 0, 10, seed);
    CHECK(e2h == random);
  }
}

TEST_CASE("easy2hard at the final epoch keeps a 2:1 score-to-random split for m=3") {
  Snapshot snap;
  for (int i = 0; i < 9; ++i) {
    snap.emplace_back("id" + std::to_string(i), static_cast<double>(i));
  }
  // kept ratio 1/3 of 9 -> m = 3; final epoch eps = 1/3 -> 2 hardest + 1 random.
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto kept = run_policy(PolicyKind::Easy2hard, snap, 1.0 / 3.0, 74, 75, seed);
    REQUIRE(kept.size() == 3);
    // id7 and id8 carry the top scores and must always be present.
    CHECK(std::count(kept.begin(), kept.end(), "id8") == 1);
    CHECK(std::count(kept.begin(), kept.end(), "id7") == 1);
  }
  // The random third is not constant across seeds.
  std::set<std::string> thirds;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto kept = run_policy(PolicyKind::Easy2hard, snap, 1.0 / 3.0, 74, 75, seed);
    for (const auto& id : kept) {
      if (id != "id7" && id != "id8") thirds.insert(id);
    }
  }
  CHECK(thirds.size() > 1);
}

TEST_CASE("static replays the epoch-0 draw and errors without it") {
  SelectionConfig config;
  config.policy = PolicyKind::Static;
  config.kept_ratio = 0.5;
  const Snapshot snap = abcd_scores();
  {
    Selector selector(config);
    Rng rng(123);
    const auto first = selector.select(snap, 0, 5, rng);
    for (int epoch = 1; epoch < 5; ++epoch) {
      Snapshot drifted = snap;
      drifted[0].second = 99.0;  // score changes must not matter
      CHECK(selector.select(drifted, epoch, 5, rng) == first);
    }
  }
  {
    Selector selector(config);
    Rng rng(123);
    CHECK_THROWS_AS(selector.select(snap, 2, 5, rng), StateError);
  }
}

TEST_CASE("selection size and determinism hold for every policy") {
  Rng data_rng(5);
  Snapshot snap;
  for (int i = 0; i < 23; ++i) {
    snap.emplace_back("x" + std::to_string(i), data_rng.unit());
  }
  for (const PolicyKind policy : all_policies()) {
    for (const double k : {0.1, 0.37, 0.5, 1.0}) {
      const auto a = run_policy(policy, snap, k, 0, 4, 99);
      const auto b = run_policy(policy, snap, k, 0, 4, 99);
      CHECK(a == b);
      CHECK(a.size() == static_cast<std::size_t>(kept_count(snap.size(), k)));
      CHECK(std::is_sorted(a.begin(), a.end()));
      // Output ids come from the snapshot.
      for (const auto& id : a) {
        CHECK(std::any_of(snap.begin(), snap.end(),
                          [&](const auto& p) { return p.first == id; }));
      }
    }
  }
}

TEST_CASE("adding a constant to every score never changes rank-based selection") {
  Rng rng(17);
  Snapshot snap;
  for (int i = 0; i < 15; ++i) {
    snap.emplace_back("s" + std::to_string(i), rng.unit());
  }
  Snapshot shifted = snap;
  for (auto& [id, score] : shifted) score += 3.25;
  for (const PolicyKind policy :
       {PolicyKind::Easy, PolicyKind::Hard, PolicyKind::Easy2hard}) {
    for (const int epoch : {0, 3, 7}) {
      const auto base = run_policy(policy, snap, 0.4, epoch, 8, 31);
      const auto moved = run_policy(policy, shifted, 0.4, epoch, 8, 31);
      CHECK(base == moved);
    }
  }
}

TEST_CASE("easy2hard hard share is non-decreasing over epochs") {
  Snapshot snap;
  for (int i = 0; i < 30; ++i) {
    snap.emplace_back("h" + std::to_string(i), static_cast<double>(i));
  }
  const int total = 12;
  const auto m = static_cast<std::size_t>(kept_count(snap.size(), 0.5));
  std::size_t prev_hard = 0;
  for (int epoch = 0; epoch < total; ++epoch) {
    const auto kept = run_policy(PolicyKind::Easy2hard, snap, 0.5, epoch, total, 1);
    CHECK(kept.size() == m);
    const double eps = epsilon_at({1.0, 1.0 / 3.0, total}, epoch);
    const auto hard_m = static_cast<std::size_t>(
        std::llround((1.0 - eps) * static_cast<double>(m)));
    CHECK(hard_m >= prev_hard);
    prev_hard = hard_m;
    // The top hard_m scorers are always kept.
    for (std::size_t i = 0; i < hard_m; ++i) {
      const std::string id = "h" + std::to_string(29 - i);
      CHECK(std::count(kept.begin(), kept.end(), id) == 1);
    }
  }
  CHECK(prev_hard == static_cast<std::size_t>(
                         std::llround((2.0 / 3.0) * static_cast<double>(m))));
}

TEST_CASE("random selection is uniform over subsets within 3 sigma") {
  const Snapshot snap = {
      {"a", 0.0}, {"b", 0.0}, {"c", 0.0}, {"d", 0.0}, {"e", 0.0}};
  std::map<std::vector<std::string>, int> counts;
  const int trials = 10000;
  SelectionConfig config;
  config.policy = PolicyKind::Random;
  config.kept_ratio = 0.4;  // m = 2 of 5
  Selector selector(config);
  for (int seed = 0; seed < trials; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed) + 1000);
    counts[selector.select(snap, 0, 1, rng)]++;
  }
  CHECK(counts.size() == 10);
  const double p = 0.1;
  const double sigma = std::sqrt(p * (1 - p) / trials);
  for (const auto& [subset, count] : counts) {
    const double freq = static_cast<double>(count) / trials;
    CHECK(std::abs(freq - p) <= 3.0 * sigma);
  }
}

TEST_CASE("policy names parse and unknown names list the alternatives") {
  CHECK(parse_policy("easy2hard") == PolicyKind::Easy2hard);
  CHECK(parse_policy("static") == PolicyKind::Static);
  try {
    parse_policy("bogus");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    for (const char* name : {"static", "random", "easy", "hard", "easy2hard"}) {
      CHECK(msg.find(name) != std::string::npos);
    }
  }
}

TEST_CASE("selection trace rows elide large id lists") {
  std::ostringstream out;
  const std::vector<std::string> ids = {"a", "b", "c"};
  write_selection_trace_row(out, 2, PolicyKind::Easy, std::nullopt, ids);
  CHECK(out.str() == "2,easy,,3,a;b;c\n");
  std::ostringstream big;
  write_selection_trace_row(big, 0, PolicyKind::Random, 0.5, ids, 2);
  CHECK(big.str() == "0,random,0.5,3,elided(3)\n");
}
