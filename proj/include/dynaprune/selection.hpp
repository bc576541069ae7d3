// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dynaprune/rng.hpp"

namespace dynaprune {

enum class PolicyKind { Static, Random, Easy, Hard, Easy2hard };

// Throws ValidationError listing the valid names on a mismatch.
PolicyKind parse_policy(const std::string& name);
const char* policy_name(PolicyKind policy);
std::span<const PolicyKind> all_policies();

// Linear decay from start_value at epoch 0 to end_value at the final epoch.
struct EpsilonSchedule {
  double start_value = 1.0;
  double end_value = 1.0 / 3.0;
  int total_epochs = 1;

  void validate() const;
};

// epsilon at the given epoch (inclusive anchors at both ends). For a
// single-epoch schedule this is end_value.
double epsilon_at(const EpsilonSchedule& schedule, int epoch);

// Number of instances kept from a dataset of n at kept ratio k:
// max(1, round-half-up(k * n)). Never exceeds n.
int kept_count(std::size_t n, double kept_ratio);

struct SelectionConfig {
  PolicyKind policy = PolicyKind::Random;
  double kept_ratio = 1.0;
  // Easy2hard only; start/end are taken from here, total_epochs at call time.
  std::optional<EpsilonSchedule> epsilon;

  void validate() const;
};

// Produces the kept subset for one epoch from a score snapshot.
//
//   Easy       lowest-score m ids
//   Hard       highest-score m ids
//   Random     uniform m-subset, fresh draw each call
//   Static     the epoch-0 Random draw, cached and replayed
//   Easy2hard  round((1 - eps) * m) hardest ids plus a uniform draw of the
//              remainder from all non-selected ids
//
// Output is always exactly kept_count(n, k) distinct ids in ascending order.
// Score ties break by ascending id, so results are seed-independent for the
// score-ordered policies. The rng is consumed only by Random / Static(epoch
// 0) / Easy2hard; at eps = 1, Easy2hard consumes it exactly like Random.
class Selector {
 public:
  explicit Selector(SelectionConfig config);

  std::vector<std::string> select(
      const std::vector<std::pair<std::string, double>>& snapshot, int epoch,
      int total_epochs, Rng& rng);

  const SelectionConfig& config() const { return config_; }

 private:
  SelectionConfig config_;
  std::optional<std::vector<std::string>> static_cache_;
};

// One `epoch,policy,epsilon,kept_count,ids` row. Ids are ';'-joined and
// elided above the threshold.
void write_selection_trace_row(std::ostream& out, int epoch, PolicyKind policy,
                               std::optional<double> epsilon,
                               std::span<const std::string> kept_ids,
                               std::size_t elide_above = 64);
const char* selection_trace_header();

}  // namespace dynaprune
