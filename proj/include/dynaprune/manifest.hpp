// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dynaprune/audio.hpp"

namespace dynaprune {

// Inline synthetic source for a single manifest entry. The entry's labels
// drive the rendered frames.
struct EntrySynthetic {
  double noise_sigma = 0.0;
  int sample_rate = 16000;
  std::uint64_t seed = 0;
  double amplitude = 0.35;
  double base_freq_hz = 250.0;
};

struct ManifestEntry {
  std::string id;
  std::optional<std::string> wav_path;  // relative to the manifest file
  std::optional<EntrySynthetic> synthetic;
  std::vector<int> labels;
  double duration_s = 0.0;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
};

// JSON-lines, one entry per line. Malformed lines raise ParseError naming
// the 1-based line number; duplicate ids raise ValidationError.
Manifest load_manifest(const std::filesystem::path& path);

void write_manifest(const std::filesystem::path& path, const Manifest& manifest);

// Materializes entries into instances: WAV entries are read from disk
// (relative to base_dir), synthetic entries are rendered deterministically.
std::vector<AudioInstance> load_instances(const Manifest& manifest,
                                          const std::filesystem::path& base_dir,
                                          std::size_t frame_len);

}  // namespace dynaprune
