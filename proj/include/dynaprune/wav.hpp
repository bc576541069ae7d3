// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <span>
#include <vector>

namespace dynaprune {

struct WavData {
  std::vector<float> samples;
  int sample_rate = 0;
};

// Reads a RIFF/WAVE file. Only PCM 16-bit mono is accepted; anything else is
// rejected with a FormatError rather than silently converted. Amplitudes are
// sample / 32768, i.e. in [-1, 1).
WavData read_wav(const std::filesystem::path& path);

// Writes PCM 16-bit mono, little-endian. Values are clamped to [-1, 1] and
// rounded to the nearest quantization level.
void write_wav_pcm16(const std::filesystem::path& path,
                     std::span<const float> samples, int sample_rate);

}  // namespace dynaprune
