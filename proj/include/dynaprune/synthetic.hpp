// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "dynaprune/audio.hpp"
#include "dynaprune/rng.hpp"

namespace dynaprune {

struct Stratum {
  double fraction = 1.0;
  double noise_sigma = 0.0;
};

// Stratified synthetic dataset: each frame carries a class token and a
// sinusoid at a class-indexed frequency; each instance adds Gaussian noise
// with its stratum's sigma. Higher-sigma strata are measurably harder for
// the frame classifier, which is what makes score-ordered selection
// meaningful at this scale.
struct SyntheticSpec {
  std::size_t n_instances = 0;
  int n_classes = 4;
  double duration_min_s = 0.3;
  double duration_max_s = 1.0;
  std::vector<Stratum> strata = {{1.0, 0.0}};
  std::uint64_t seed = 0;
  int sample_rate = 16000;
  std::size_t frame_len = kDefaultFrameLen;
  double amplitude = 0.35;
  double base_freq_hz = 250.0;  // class c uses (c + 1) * base_freq_hz

  void validate() const;
};

// Stratum index per instance. Counts follow the fractions exactly (largest
// remainder), then positions are shuffled deterministically from the seed.
std::vector<std::size_t> stratum_assignment(const SyntheticSpec& spec);

// Deterministic given the spec (including its seed).
std::vector<AudioInstance> generate_synthetic(const SyntheticSpec& spec);

// Waveform for an explicit frame-label sequence; shared by dataset
// generation and manifest entries that inline a synthetic source.
std::vector<float> render_frames(const std::vector<int>& frame_labels,
                                 std::size_t frame_len, int sample_rate,
                                 double amplitude, double base_freq_hz,
                                 double noise_sigma, Rng& rng);

}  // namespace dynaprune
