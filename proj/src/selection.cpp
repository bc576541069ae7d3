// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#include "dynaprune/selection.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

#include "dynaprune/error.hpp"

namespace dynaprune {
namespace {

using Snapshot = std::vector<std::pair<std::string, double>>;

constexpr std::array<PolicyKind, 5> kAllPolicies = {
    PolicyKind::Static, PolicyKind::Random, PolicyKind::Easy, PolicyKind::Hard,
    PolicyKind::Easy2hard};

// Uniform m-subset of items, preserving input order (selection sampling).
// Consumes exactly items.size() draws, so two callers sharing an rng stream
// and the same n stay in lockstep.
std::vector<std::string> sample_subset(std::span<const std::string> items,
                                       std::size_t m, Rng& rng) {
  std::vector<std::string> out;
  out.reserve(m);
  std::size_t needed = m;
  const std::size_t n = items.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t remaining = n - i;
    if (rng.below(remaining) < needed) {
      out.push_back(items[i]);
      if (--needed == 0) {
        // Keep consuming so the draw count is a function of n alone.
        for (std::size_t j = i + 1; j < n; ++j) rng.below(n - j);
        break;
      }
    }
  }
  return out;
}

std::vector<std::string> ids_of(const Snapshot& snapshot) {
  std::vector<std::string> ids;
  ids.reserve(snapshot.size());
  for (const auto& [id, score] : snapshot) ids.push_back(id);
  return ids;
}

// Ids of the m highest-score entries when hardest_first, else the m lowest.
// Ties break by ascending id either way.
std::vector<std::string> score_ordered(const Snapshot& snapshot, std::size_t m,
                                       bool hardest_first) {
  Snapshot sorted(snapshot);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [hardest_first](const auto& a, const auto& b) {
                     if (a.second != b.second) {
                       return hardest_first ? a.second > b.second
                                            : a.second < b.second;
                     }
                     return a.first < b.first;
                   });
  std::vector<std::string> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.push_back(sorted[i].first);
  return out;
}

}  // namespace

PolicyKind parse_policy(const std::string& name) {
  for (const PolicyKind p : kAllPolicies) {
    if (name == policy_name(p)) return p;
  }
  throw ValidationError("unknown policy '" + name +
                        "' (valid: static, random, easy, hard, easy2hard)");
}

const char* policy_name(PolicyKind policy) {
  switch (policy) {
    case PolicyKind::Static: return "static";
    case PolicyKind::Random: return "random";
    case PolicyKind::Easy: return "easy";
    case PolicyKind::Hard: return "hard";
    case PolicyKind::Easy2hard: return "easy2hard";
  }
  throw ArgumentError("invalid PolicyKind");
}

std::span<const PolicyKind> all_policies() { return kAllPolicies; }

void EpsilonSchedule::validate() const {
  if (!(0.0 <= end_value && end_value <= start_value && start_value <= 1.0)) {
    throw ValidationError("epsilon schedule: need 0 <= end <= start <= 1");
  }
  if (total_epochs < 1) {
    throw ValidationError("epsilon schedule: total_epochs must be >= 1");
  }
}

double epsilon_at(const EpsilonSchedule& schedule, int epoch) {
  schedule.validate();
  if (epoch < 0 || epoch >= schedule.total_epochs) {
    throw ArgumentError("epsilon_at: epoch " + std::to_string(epoch) +
                        " outside [0, " + std::to_string(schedule.total_epochs) +
                        ")");
  }
  if (schedule.total_epochs == 1) return schedule.end_value;
  const double t = static_cast<double>(epoch) /
                   static_cast<double>(schedule.total_epochs - 1);
  return schedule.start_value + (schedule.end_value - schedule.start_value) * t;
}

int kept_count(std::size_t n, double kept_ratio) {
  if (n == 0) throw ArgumentError("kept_count: empty dataset");
  if (!(kept_ratio > 0.0) || kept_ratio > 1.0) {
    throw ArgumentError("kept_count: kept ratio must be in (0, 1]");
  }
  const double exact = kept_ratio * static_cast<double>(n);
  auto count = static_cast<long long>(std::floor(exact + 0.5));  // half up
  count = std::max(count, 1LL);
  count = std::min(count, static_cast<long long>(n));
  return static_cast<int>(count);
}

void SelectionConfig::validate() const {
  if (!(kept_ratio > 0.0) || kept_ratio > 1.0) {
    throw ValidationError("selection: kept ratio must be in (0, 1]");
  }
  if (policy == PolicyKind::Easy2hard) {
    if (!epsilon) {
      throw ValidationError("selection: easy2hard requires an epsilon schedule");
    }
    EpsilonSchedule check = *epsilon;
    check.total_epochs = std::max(check.total_epochs, 1);
    check.validate();
  }
}

Selector::Selector(SelectionConfig config) : config_(std::move(config)) {
  config_.validate();
}

std::vector<std::string> Selector::select(const Snapshot& snapshot, int epoch,
                                          int total_epochs, Rng& rng) {
  if (snapshot.empty()) throw ArgumentError("select: empty score snapshot");
  if (epoch < 0 || epoch >= total_epochs) {
    throw ArgumentError("select: epoch outside [0, total_epochs)");
  }
  const std::size_t n = snapshot.size();
  const auto m = static_cast<std::size_t>(kept_count(n, config_.kept_ratio));

  std::vector<std::string> kept;
  switch (config_.policy) {
    case PolicyKind::Easy:
      kept = score_ordered(snapshot, m, /*hardest_first=*/false);
      break;
    case PolicyKind::Hard:
      kept = score_ordered(snapshot, m, /*hardest_first=*/true);
      break;
    case PolicyKind::Random:
      kept = sample_subset(ids_of(snapshot), m, rng);
      break;
    case PolicyKind::Static: {
      if (!static_cache_) {
        if (epoch != 0) {
          throw StateError(
              "static policy: no cached epoch-0 subset; run epoch 0 first");
        }
        static_cache_ = sample_subset(ids_of(snapshot), m, rng);
      }
      kept = *static_cache_;
      break;
    }
    case PolicyKind::Easy2hard: {
      EpsilonSchedule schedule = *config_.epsilon;
      schedule.total_epochs = total_epochs;
      const double eps = epsilon_at(schedule, epoch);
      auto hard_m = static_cast<std::size_t>(
          std::llround((1.0 - eps) * static_cast<double>(m)));
      hard_m = std::min(hard_m, m);
      kept = score_ordered(snapshot, hard_m, /*hardest_first=*/true);
      // Random remainder comes from the whole non-selected pool, not a
      // difficulty band.
      std::vector<std::string> pool;
      pool.reserve(n - hard_m);
      std::vector<std::string> taken(kept);
      std::sort(taken.begin(), taken.end());
      for (const auto& [id, score] : snapshot) {
        if (!std::binary_search(taken.begin(), taken.end(), id)) {
          pool.push_back(id);
        }
      }
      std::vector<std::string> extra = sample_subset(pool, m - hard_m, rng);
      kept.insert(kept.end(), extra.begin(), extra.end());
      break;
    }
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

const char* selection_trace_header() {
  return "epoch,policy,epsilon,kept_count,ids";
}

void write_selection_trace_row(std::ostream& out, int epoch, PolicyKind policy,
                               std::optional<double> epsilon,
                               std::span<const std::string> kept_ids,
                               std::size_t elide_above) {
  out << epoch << ',' << policy_name(policy) << ',';
  if (epsilon) out << *epsilon;
  out << ',' << kept_ids.size() << ',';
  if (kept_ids.size() > elide_above) {
    out << "elided(" << kept_ids.size() << ")";
  } else {
    for (std::size_t i = 0; i < kept_ids.size(); ++i) {
      if (i > 0) out << ';';
      out << kept_ids[i];
    }
  }
  out << '\n';
}

}  // namespace dynaprune
