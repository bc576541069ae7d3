// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dynaprune {

inline constexpr std::size_t kDefaultFrameLen = 160;  // 10 ms at 16 kHz

// One scored training example: raw waveform plus one class token per frame.
// Immutable after construction; safe to share across threads.
struct AudioInstance {
  std::string id;
  std::vector<float> samples;  // nominal range [-1, 1]
  int sample_rate = 16000;
  std::vector<int> labels;  // one per frame of frame_len samples
  double duration_s = 0.0;  // |samples| / sample_rate

  // Validates the invariants and fills duration_s.
  static AudioInstance make(std::string id, std::vector<float> samples,
                            int sample_rate, std::vector<int> labels,
                            std::size_t frame_len);

  void validate(std::size_t frame_len) const;
};

// ceil(n_samples / frame_len)
std::size_t frame_count(std::size_t n_samples, std::size_t frame_len);

// Frame labels for a transformed signal whose sample j originated at source
// index origin[j]. Each output frame takes the majority label among the
// origins it covers; ties go to the smaller label value.
std::vector<int> relabel_from_origins(const std::vector<int>& source_labels,
                                      std::size_t frame_len,
                                      std::span<const std::uint32_t> origin,
                                      int n_classes_hint = 0);

// New instance keeping exactly the given (ascending) sample indices, with
// labels recomputed from the surviving positions.
AudioInstance select_samples(const AudioInstance& in,
                             std::span<const std::uint32_t> kept,
                             std::size_t frame_len);

// Leading segment of at most cap_s seconds. Labels are re-derived from the
// kept prefix. No-op when the instance is already within the cap.
AudioInstance truncate_to(const AudioInstance& in, double cap_s,
                          std::size_t frame_len);

}  // namespace dynaprune
