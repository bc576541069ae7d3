// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include <doctest.h>

#include "dynaprune/error.hpp"
#include "dynaprune/kernels.hpp"
#include "dynaprune/rng.hpp"
#include "dynaprune/signal_ops.hpp"

using namespace dynaprune;

TEST_CASE("z_normalize on a constant signal returns zeros") {
  std::vector<float> x = {1.0f, 1.0f, 1.0f, 1.0f};
  z_normalize(x);
  CHECK(x == std::vector<float>{0.0f, 0.0f, 0.0f, 0.0f});
}

TEST_CASE("z_normalize leaves an already normalized pair unchanged") {
  std::vector<float> x = {-1.0f, 1.0f};
  z_normalize(x);
  CHECK(x[0] == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("z_normalize matches the hand oracle (x - 3) / sqrt(5)") {
  // mean of [0,2,4,6] is 3, population variance is 5.
  std::vector<float> x = {0.0f, 2.0f, 4.0f, 6.0f};
  z_normalize(x);
  CHECK(x[0] == doctest::Approx(-1.3416).epsilon(1e-3));
  CHECK(x[1] == doctest::Approx(-0.4472).epsilon(1e-3));
  CHECK(x[2] == doctest::Approx(0.4472).epsilon(1e-3));
  CHECK(x[3] == doctest::Approx(1.3416).epsilon(1e-3));
}

TEST_CASE("z_normalize yields zero mean and unit std, and is idempotent") {
  Rng rng(11);
  std::vector<float> x(5000);
  for (float& v : x) v = static_cast<float>(rng.range(-0.8, 0.4));
  z_normalize(x);
  const auto check_stats = [&]() {
    const auto m = kernels::scalar_table().moments(x.data(), x.size());
    const double mean = m.sum / static_cast<double>(x.size());
    const double var = m.sum_sq / static_cast<double>(x.size()) - mean * mean;
    CHECK(std::abs(mean) < 1e-6);
    CHECK(std::abs(std::sqrt(var) - 1.0) < 1e-6);
  };
  check_stats();
  const std::vector<float> once = x;
  z_normalize(x);
  check_stats();
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(std::abs(x[i] - once[i]) < 1e-6f);
  }
}

TEST_CASE("z_normalize rejects signals shorter than 2") {
  std::vector<float> x = {1.0f};
  CHECK_THROWS_AS(z_normalize(x), ArgumentError);
}

TEST_CASE("resample with equal rates is the identity") {
  Rng rng(3);
  std::vector<float> x(777);
  for (float& v : x) v = static_cast<float>(rng.range(-1.0, 1.0));
  const std::vector<float> y = resample_linear(x, 16000, 16000);
  CHECK(y == x);
}

TEST_CASE("resample 16000 samples from 16 kHz to 11025 Hz gives 11025 samples") {
  const std::vector<float> x(16000, 0.1f);
  CHECK(resample_linear(x, 16000, 11025).size() == 11025);
}

TEST_CASE("resample [0, 1] upsampled 2x interpolates to thirds") {
  const std::vector<float> x = {0.0f, 1.0f};
  const std::vector<float> y = resample_linear(x, 1, 2);
  REQUIRE(y.size() == 4);
  CHECK(y[0] == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(y[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  CHECK(y[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  CHECK(y[3] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("resample rejects non-positive rates") {
  const std::vector<float> x = {0.0f, 1.0f};
  CHECK_THROWS_AS(resample_linear(x, 16000, 0), ArgumentError);
  CHECK_THROWS_AS(resample_linear(x, 16000, -5), ArgumentError);
  CHECK_THROWS_AS(resample_linear(x, 0, 16000), ArgumentError);
}

TEST_CASE("up then down by the same ratio preserves length") {
  Rng rng(5);
  for (const std::size_t n : {4u, 100u, 1601u}) {
    std::vector<float> x(n);
    for (float& v : x) v = static_cast<float>(rng.range(-1.0, 1.0));
    const std::vector<float> up = resample_linear(x, 8000, 16000);
    const std::vector<float> down = resample_linear(up, 16000, 8000);
    CHECK(down.size() == x.size());
  }
}

TEST_CASE("resample_instance re-derives labels from sample origins") {
  // Two frames at 16 kHz with distinct labels; halving the rate halves the
  // sample count and keeps one frame's worth, so both labels must survive in
  // the single new frame boundary layout.
  std::vector<float> samples(320, 0.5f);
  AudioInstance inst =
      AudioInstance::make("r", std::move(samples), 16000, {2, 7}, 160);
  const AudioInstance out = resample_instance(inst, 8000, 160);
  CHECK(out.sample_rate == 8000);
  CHECK(out.samples.size() == 160);
  REQUIRE(out.labels.size() == 1);
  // 80 origins land in each source frame; the tie goes to the smaller label.
  CHECK(out.labels[0] == 2);
}
