// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "dynaprune/audio.hpp"

namespace dynaprune {

// Per-utterance z-normalization, in place: subtract the mean, divide by the
// population standard deviation. A constant signal (zero variance) becomes
// all zeros. Requires at least two samples.
void z_normalize(std::span<float> samples);

// Linear-interpolation resampler. Output length is round(n * dst / src);
// output index j reads the source at position j * (n - 1) / (out_len - 1),
// so the first and last samples are preserved exactly. No anti-aliasing.
std::vector<float> resample_linear(std::span<const float> samples,
                                   int src_rate, int dst_rate);

// Resamples an instance and re-derives its frame labels from where each
// output sample originated.
AudioInstance resample_instance(const AudioInstance& in, int dst_rate,
                                std::size_t frame_len);

}  // namespace dynaprune
