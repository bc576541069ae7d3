// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#include "dynaprune/audio.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dynaprune/error.hpp"

namespace dynaprune {

std::size_t frame_count(std::size_t n_samples, std::size_t frame_len) {
  if (frame_len == 0) throw ArgumentError("frame_len must be positive");
  return (n_samples + frame_len - 1) / frame_len;
}

AudioInstance AudioInstance::make(std::string id, std::vector<float> samples,
                                  int sample_rate, std::vector<int> labels,
                                  std::size_t frame_len) {
  AudioInstance inst;
  inst.id = std::move(id);
  inst.samples = std::move(samples);
  inst.sample_rate = sample_rate;
  inst.labels = std::move(labels);
  inst.duration_s = static_cast<double>(inst.samples.size()) /
                    static_cast<double>(sample_rate);
  inst.validate(frame_len);
  return inst;
}

void AudioInstance::validate(std::size_t frame_len) const {
  if (samples.empty()) {
    throw ValidationError("instance '" + id + "': needs at least one sample");
  }
  if (sample_rate <= 0) {
    throw ValidationError("instance '" + id + "': sample_rate must be positive");
  }
  const double expect =
      static_cast<double>(samples.size()) / static_cast<double>(sample_rate);
  if (std::abs(duration_s - expect) > 1e-9) {
    throw ValidationError("instance '" + id + "': duration_s " +
                          std::to_string(duration_s) +
                          " inconsistent with sample count");
  }
  const std::size_t want = frame_count(samples.size(), frame_len);
  if (labels.size() != want) {
    throw ValidationError("instance '" + id + "': " +
                          std::to_string(labels.size()) + " labels for " +
                          std::to_string(want) + " frames");
  }
}

std::vector<int> relabel_from_origins(const std::vector<int>& source_labels,
                                      std::size_t frame_len,
                                      std::span<const std::uint32_t> origin,
                                      int n_classes_hint) {
  const std::size_t frames = frame_count(origin.size(), frame_len);
  std::vector<int> out(frames, 0);
  int n_classes = n_classes_hint;
  if (n_classes <= 0) {
    for (const int label : source_labels) n_classes = std::max(n_classes, label + 1);
  }
  std::vector<std::size_t> counts(static_cast<std::size_t>(n_classes));
  // Origins are non-decreasing for every producer (kept-index sets, resample
  // positions), so the source frame advances monotonically; track it with a
  // moving boundary instead of dividing per sample.
  std::size_t src_frame = 0;
  std::size_t boundary = frame_len;
  for (std::size_t f = 0; f < frames; ++f) {
    const std::size_t begin = f * frame_len;
    const std::size_t end = std::min(begin + frame_len, origin.size());
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t j = begin; j < end; ++j) {
      if (origin[j] < (f == 0 && j == 0 ? 0 : origin[j > begin ? j - 1 : begin])) {
        throw ArgumentError("relabel_from_origins: origins must be non-decreasing");
      }
      while (origin[j] >= boundary) {
        ++src_frame;
        boundary += frame_len;
      }
      counts[static_cast<std::size_t>(source_labels[src_frame])]++;
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < counts.size(); ++c) {
      if (counts[c] > counts[best]) best = c;
    }
    out[f] = static_cast<int>(best);
  }
  return out;
}

AudioInstance select_samples(const AudioInstance& in,
                             std::span<const std::uint32_t> kept,
                             std::size_t frame_len) {
  if (kept.empty()) throw ArgumentError("select_samples: empty index set");
  if (kept.back() >= in.samples.size()) {
    throw ArgumentError("select_samples: index out of range");
  }
  std::vector<float> samples(kept.size());
  for (std::size_t j = 0; j < kept.size(); ++j) {
    samples[j] = in.samples[kept[j]];
  }
  int n_classes = 0;
  for (const int label : in.labels) n_classes = std::max(n_classes, label + 1);
  std::vector<int> labels =
      relabel_from_origins(in.labels, frame_len, kept, n_classes);
  return AudioInstance::make(in.id, std::move(samples), in.sample_rate,
                             std::move(labels), frame_len);
}

AudioInstance truncate_to(const AudioInstance& in, double cap_s,
                          std::size_t frame_len) {
  if (cap_s <= 0.0) throw ArgumentError("clip cap must be positive");
  const std::size_t cap_samples = static_cast<std::size_t>(
      std::llround(cap_s * static_cast<double>(in.sample_rate)));
  if (in.samples.size() <= cap_samples) return in;
  std::vector<float> samples(in.samples.begin(),
                             in.samples.begin() + static_cast<long>(cap_samples));
  const std::size_t frames = frame_count(samples.size(), frame_len);
  std::vector<int> labels(in.labels.begin(),
                          in.labels.begin() + static_cast<long>(frames));
  return AudioInstance::make(in.id, std::move(samples), in.sample_rate,
                             std::move(labels), frame_len);
}

}  // namespace dynaprune
