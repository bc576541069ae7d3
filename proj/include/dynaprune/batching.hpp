// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "dynaprune/audio.hpp"

namespace dynaprune {

// Duration-budgeted batches. Instances over clip_cap_s are truncated to the
// cap (leading segment); the rest are packed greedily in descending-duration
// order until the next instance would push a batch past batch_budget_s.
// Every instance lands in exactly one batch, and a single instance at the
// cap always fits because clip_cap_s <= batch_budget_s is validated.
std::vector<std::vector<AudioInstance>> build_batches(
    std::vector<AudioInstance> instances, double clip_cap_s,
    double batch_budget_s, std::size_t frame_len = kDefaultFrameLen);

}  // namespace dynaprune
