// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#include <map>
#include <vector>

#include <doctest.h>

#include "dynaprune/error.hpp"
#include "dynaprune/synthetic.hpp"
#include "train_util.hpp"

using namespace dynaprune;

namespace {

SyntheticSpec small_spec() {
  SyntheticSpec spec;
  spec.n_instances = 40;
  spec.n_classes = 4;
  spec.duration_min_s = 0.1;
  spec.duration_max_s = 0.3;
  spec.seed = 11;
  return spec;
}

}  // namespace

TEST_CASE("zero instances yields an empty dataset") {
  SyntheticSpec spec = small_spec();
  spec.n_instances = 0;
  CHECK(generate_synthetic(spec).empty());
}

TEST_CASE("generation is deterministic given spec and seed") {
  const SyntheticSpec spec = small_spec();
  const auto a = generate_synthetic(spec);
  const auto b = generate_synthetic(spec);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == b[i].id);
    CHECK(a[i].samples == b[i].samples);
    CHECK(a[i].labels == b[i].labels);
  }
  SyntheticSpec other = spec;
  other.seed = 12;
  const auto c = generate_synthetic(other);
  bool any_difference = false;
  for (std::size_t i = 0; i < a.size() && !any_difference; ++i) {
    any_difference = a[i].samples != c[i].samples;
  }
  CHECK(any_difference);
}

TEST_CASE("spec validation rejects bad fractions and sigmas") {
  SyntheticSpec spec = small_spec();
  spec.strata = {{0.5, 0.1}, {0.4, 0.2}};  // sums to 0.9
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec.strata = {{0.5, 0.1}, {0.5, -0.2}};
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec.strata = {{1.0, 0.0}};
  CHECK_NOTHROW(spec.validate());
}

TEST_CASE("stratum assignment matches fractions exactly") {
  SyntheticSpec spec = small_spec();
  spec.n_instances = 100;
  spec.strata = {{0.5, 0.05}, {0.3, 0.4}, {0.2, 1.0}};
  const auto assignment = stratum_assignment(spec);
  std::map<std::size_t, int> counts;
  for (const std::size_t s : assignment) counts[s]++;
  CHECK(counts[0] == 50);
  CHECK(counts[1] == 30);
  CHECK(counts[2] == 20);
}

TEST_CASE("durations stay in range and labels cover classes") {
  SyntheticSpec spec = small_spec();
  spec.n_instances = 60;
  const auto data = generate_synthetic(spec);
  std::map<int, int> class_counts;
  for (const AudioInstance& inst : data) {
    // Durations are rounded to whole frames, so allow half a frame of slack.
    CHECK(inst.duration_s >= spec.duration_min_s - 0.005);
    CHECK(inst.duration_s <= spec.duration_max_s + 0.005);
    CHECK(inst.samples.size() % spec.frame_len == 0);
    for (const int label : inst.labels) {
      CHECK(label >= 0);
      CHECK(label < spec.n_classes);
      class_counts[label]++;
    }
  }
  CHECK(class_counts.size() == 4);
}

TEST_CASE("noise-free stratum is learnable to under 5% frame error in 10 epochs") {
  SyntheticSpec spec = small_spec();
  spec.n_instances = 60;
  spec.strata = {{1.0, 0.0}};
  const auto data = generate_synthetic(spec);
  const auto outcome = test_util::train_full_data(data, 10, 0.5, 1, spec.n_classes);
  const auto eval_set = test_util::normalized(data);
  CHECK(outcome.model.evaluate(eval_set) < 0.05);
}

TEST_CASE("high-sigma stratum trains with strictly higher epoch-3 loss, 5 of 5 seeds") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SyntheticSpec spec = small_spec();
    spec.n_instances = 80;
    spec.seed = seed;
    spec.strata = {{0.5, 0.05}, {0.5, 1.0}};
    const auto data = generate_synthetic(spec);
    const auto strata = stratum_assignment(spec);
    const auto outcome = test_util::train_full_data(data, 3, 0.5, seed, spec.n_classes);
    double mean_loss[2] = {0.0, 0.0};
    int counts[2] = {0, 0};
    for (std::size_t i = 0; i < data.size(); ++i) {
      mean_loss[strata[i]] += outcome.last_epoch_losses.at(data[i].id);
      counts[strata[i]]++;
    }
    mean_loss[0] /= counts[0];
    mean_loss[1] /= counts[1];
    INFO("seed ", seed, ": easy ", mean_loss[0], " hard ", mean_loss[1]);
    CHECK(mean_loss[1] > mean_loss[0]);
  }
}
