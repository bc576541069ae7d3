// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#include "dynaprune/batching.hpp"

#include <algorithm>

#include "dynaprune/error.hpp"

namespace dynaprune {

std::vector<std::vector<AudioInstance>> build_batches(
    std::vector<AudioInstance> instances, double clip_cap_s,
    double batch_budget_s, std::size_t frame_len) {
  if (!(clip_cap_s > 0.0) || !(batch_budget_s > 0.0)) {
    throw ArgumentError("build_batches: budgets must be positive");
  }
  if (clip_cap_s > batch_budget_s) {
    throw ArgumentError("build_batches: clip cap exceeds the batch budget");
  }
  for (AudioInstance& inst : instances) {
    if (inst.duration_s > clip_cap_s) {
      inst = truncate_to(inst, clip_cap_s, frame_len);
    }
  }
  std::sort(instances.begin(), instances.end(),
            [](const AudioInstance& a, const AudioInstance& b) {
              if (a.duration_s != b.duration_s) {
                return a.duration_s > b.duration_s;
              }
              return a.id < b.id;
            });
  std::vector<std::vector<AudioInstance>> batches;
  double current_total = 0.0;
  for (AudioInstance& inst : instances) {
    if (batches.empty() || current_total + inst.duration_s > batch_budget_s) {
      batches.emplace_back();
      current_total = 0.0;
    }
    current_total += inst.duration_s;
    batches.back().push_back(std::move(inst));
  }
  return batches;
}

}  // namespace dynaprune
