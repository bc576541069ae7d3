// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#include "dynaprune/timewise.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "dynaprune/error.hpp"

namespace dynaprune {
namespace {

// Floyd's algorithm: uniform k-subset of {0..n-1} with O(k) draws.
std::vector<std::uint64_t> sample_distinct(std::uint64_t n, std::uint64_t k,
                                           Rng& rng) {
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(static_cast<std::size_t>(k) * 2);
  for (std::uint64_t j = n - k; j < n; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

void DropSpec::validate() const {
  if (!(time_kept_ratio > 0.0) || time_kept_ratio > 1.0) {
    throw ValidationError("drop: time_kept_ratio must be in (0, 1]");
  }
  if (mode == Mode::Chunk && chunk_len == 0) {
    throw ValidationError("drop: chunk_len must be >= 1");
  }
}

void MaskSpec::validate() const {
  if (!(max_mask_len_s > 0.0)) {
    throw ValidationError("mask: max_mask_len_s must be positive");
  }
  if (!(masks_per_second > 0.0)) {
    throw ValidationError("mask: masks_per_second must be positive");
  }
}

std::size_t target_kept_length(std::size_t total, double kept_ratio) {
  if (total == 0) throw ArgumentError("target_kept_length: empty signal");
  if (!(kept_ratio > 0.0) || kept_ratio > 1.0) {
    throw ArgumentError("target_kept_length: ratio must be in (0, 1]");
  }
  const auto kept = static_cast<std::size_t>(
      std::llround(kept_ratio * static_cast<double>(total)));
  return std::clamp<std::size_t>(kept, 1, total);
}

std::size_t chunk_count(std::size_t total, std::size_t kept,
                        std::size_t chunk_len) {
  if (chunk_len == 0) throw ArgumentError("chunk_count: chunk_len must be >= 1");
  if (kept < 1 || kept > total) {
    throw ArgumentError("chunk_count: kept length outside [1, total]");
  }
  return static_cast<std::size_t>(std::llround(
      static_cast<double>(total - kept) / static_cast<double>(chunk_len)));
}

std::vector<std::uint32_t> draw_point_kept(std::size_t total, std::size_t kept,
                                           Rng& rng) {
  if (kept < 1 || kept > total) {
    throw ArgumentError("drop_points: kept length outside [1, total]");
  }
  if (total > UINT32_MAX) throw ArgumentError("drop_points: signal too long");
  // Draw the smaller side of the split, then materialize the kept set.
  if (kept == total) {
    std::vector<std::uint32_t> all(total);
    for (std::size_t i = 0; i < total; ++i) all[i] = static_cast<std::uint32_t>(i);
    return all;
  }
  const std::size_t dropped = total - kept;
  if (kept <= dropped) {
    const std::vector<std::uint64_t> pick = sample_distinct(total, kept, rng);
    return {pick.begin(), pick.end()};
  }
  const std::vector<std::uint64_t> drop = sample_distinct(total, dropped, rng);
  std::vector<std::uint32_t> out;
  out.reserve(kept);
  std::size_t d = 0;
  for (std::size_t i = 0; i < total; ++i) {
    if (d < drop.size() && drop[d] == i) {
      ++d;
    } else {
      out.push_back(static_cast<std::uint32_t>(i));
    }
  }
  return out;
}

std::vector<std::uint32_t> draw_chunk_kept(std::size_t total, std::size_t kept,
                                           std::size_t chunk_len, Rng& rng) {
  if (total > UINT32_MAX) throw ArgumentError("drop_chunks: signal too long");
  const std::size_t c = chunk_count(total, kept, chunk_len);
  if (c * chunk_len > total) {
    throw ArgumentError("drop_chunks: " + std::to_string(c) + " chunks of " +
                        std::to_string(chunk_len) + " exceed " +
                        std::to_string(total) + " samples");
  }
  std::vector<std::uint32_t> out;
  out.reserve(total - c * chunk_len);
  if (c == 0) {
    for (std::size_t i = 0; i < total; ++i) out.push_back(static_cast<std::uint32_t>(i));
    return out;
  }
  // Gap construction. A uniform multiset of c values from {0..M} is a
  // uniform c-subset of {0..M+c-1} with i subtracted from the i-th order
  // statistic; chunk i then removes [u_i + i*n, u_i + (i+1)*n).
  const std::uint64_t gap_range = static_cast<std::uint64_t>(total) -
                                  static_cast<std::uint64_t>(c) * chunk_len;
  std::vector<std::uint64_t> starts = sample_distinct(gap_range + c, c, rng);
  for (std::size_t i = 0; i < c; ++i) {
    starts[i] = starts[i] - i + i * chunk_len;  // u_i + i*n
  }
  std::size_t next = 0;
  std::size_t i = 0;
  while (i < total) {
    if (next < c && i == starts[next]) {
      i += chunk_len;
      ++next;
    } else {
      out.push_back(static_cast<std::uint32_t>(i));
      ++i;
    }
  }
  return out;
}

void apply_time_mask(std::span<float> samples, int sample_rate,
                     const MaskSpec& spec, Rng& rng) {
  spec.validate();
  if (samples.empty()) throw ArgumentError("mask: empty signal");
  if (sample_rate <= 0) throw ArgumentError("mask: bad sample rate");
  const std::size_t total = samples.size();
  const double duration = static_cast<double>(total) / sample_rate;
  const auto n_masks =
      static_cast<std::size_t>(std::llround(spec.masks_per_second * duration));
  const auto max_run = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(
             std::llround(spec.max_mask_len_s * sample_rate)));
  for (std::size_t m = 0; m < n_masks; ++m) {
    const std::uint64_t run = 1 + rng.below(max_run);
    if (run >= total) {
      std::fill(samples.begin(), samples.end(), 0.0f);
      continue;
    }
    const std::uint64_t start = rng.below(total - run + 1);
    std::fill(samples.begin() + static_cast<long>(start),
              samples.begin() + static_cast<long>(start + run), 0.0f);
  }
}

}  // namespace dynaprune
