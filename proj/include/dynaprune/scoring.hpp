// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dynaprune {

// Per-instance difficulty scores driving selection: each instance's most
// recently observed mean training loss. Instances skipped in an epoch keep
// their stale score, and the staleness is observable via last_update_epoch.
// Single-writer: updates happen at epoch boundaries on the control thread.
class ScoreTable {
 public:
  struct Entry {
    double score = 0.0;
    int last_update_epoch = 0;
  };

  // All entries start at initial_value with last_update_epoch = 0.
  static ScoreTable init(std::span<const std::string> ids, double initial_value);

  // Applies observed losses for the given epoch. Ids must exist, losses must
  // be finite and >= 0, and epoch may not go backwards. Entries absent from
  // the map are left untouched.
  void update(const std::vector<std::pair<std::string, double>>& losses,
              int epoch);

  // Copied (id, score) pairs in ascending id order.
  std::vector<std::pair<std::string, double>> snapshot() const;

  const Entry& at(const std::string& id) const;
  int current_epoch() const { return current_epoch_; }
  std::size_t size() const { return entries_.size(); }

  // Appends one `epoch,id,score,last_update_epoch` row per entry.
  void append_trace_csv(std::ostream& out) const;
  static const char* trace_csv_header() {
    return "epoch,id,score,last_update_epoch";
  }

 private:
  std::map<std::string, Entry> entries_;
  int current_epoch_ = 0;
};

}  // namespace dynaprune
