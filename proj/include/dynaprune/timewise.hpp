// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dynaprune/rng.hpp"

namespace dynaprune {

// Fine-grained intra-instance pruning of raw sample sequences.
struct DropSpec {
  enum class Mode { Point, Chunk };
  Mode mode = Mode::Chunk;
  double time_kept_ratio = 1.0;        // fraction of samples retained
  std::size_t chunk_len = 160;         // chunk mode only

  void validate() const;
};

struct MaskSpec {
  double max_mask_len_s = 0.4;
  double masks_per_second = 1.0;

  void validate() const;
};

// Target kept length L = max(1, round(ratio * total)).
std::size_t target_kept_length(std::size_t total, double kept_ratio);

// Number of chunks removed: round((T - L) / n).
std::size_t chunk_count(std::size_t total, std::size_t kept, std::size_t chunk_len);

// Uniform random L-subset of {0..T-1}, ascending. The output indices select
// a subsequence: relative order is preserved by construction.
std::vector<std::uint32_t> draw_point_kept(std::size_t total, std::size_t kept,
                                           Rng& rng);

// Kept indices after removing c = round((T-L)/n) pairwise-disjoint runs of
// exactly n consecutive samples, placed uniformly over all non-overlapping
// arrangements (gap construction: c sorted draws with repetition from
// {0..T-c*n}; chunk i starts at u_i + i*n). Output length is exactly T - c*n.
std::vector<std::uint32_t> draw_chunk_kept(std::size_t total, std::size_t kept,
                                           std::size_t chunk_len, Rng& rng);

// Zeroes round(masks_per_second * duration) runs, each of a length drawn
// uniformly from [1, max_mask_len_s * sample_rate] at a uniform start. Masks
// may overlap; sequence length never changes.
void apply_time_mask(std::span<float> samples, int sample_rate,
                     const MaskSpec& spec, Rng& rng);

}  // namespace dynaprune
