// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#include "dynaprune/scoring.hpp"

#include <cmath>
#include <ostream>

#include "dynaprune/error.hpp"

namespace dynaprune {

ScoreTable ScoreTable::init(std::span<const std::string> ids,
                            double initial_value) {
  if (ids.empty()) throw ValidationError("score table: empty id set");
  if (!std::isfinite(initial_value) || initial_value < 0.0) {
    throw ValidationError("score table: initial value must be finite and >= 0");
  }
  ScoreTable table;
  for (const std::string& id : ids) {
    if (!table.entries_.emplace(id, Entry{initial_value, 0}).second) {
      throw ValidationError("score table: duplicate id '" + id + "'");
    }
  }
  return table;
}

void ScoreTable::update(
    const std::vector<std::pair<std::string, double>>& losses, int epoch) {
  if (epoch < current_epoch_) {
    throw ValidationError("score table: epoch " + std::to_string(epoch) +
                          " precedes current epoch " +
                          std::to_string(current_epoch_));
  }
  // Validate the whole batch before touching anything.
  for (const auto& [id, loss] : losses) {
    if (entries_.find(id) == entries_.end()) {
      throw ValidationError("score table: unknown id '" + id + "'");
    }
    if (!std::isfinite(loss) || loss < 0.0) {
      throw ValidationError("score table: non-finite or negative loss for '" +
                            id + "'");
    }
  }
  for (const auto& [id, loss] : losses) {
    Entry& e = entries_[id];
    e.score = loss;
    e.last_update_epoch = epoch;
  }
  current_epoch_ = epoch;
}

std::vector<std::pair<std::string, double>> ScoreTable::snapshot() const {
  std::vector<std::pair<std::string, double>> out;
  out.reserve(entries_.size());
  for (const auto& [id, e] : entries_) {
    out.emplace_back(id, e.score);
  }
  return out;
}

const ScoreTable::Entry& ScoreTable::at(const std::string& id) const {
  const auto it = entries_.find(id);
  if (it == entries_.end()) {
    throw ValidationError("score table: unknown id '" + id + "'");
  }
  return it->second;
}

void ScoreTable::append_trace_csv(std::ostream& out) const {
  for (const auto& [id, e] : entries_) {
    out << current_epoch_ << ',' << id << ',' << e.score << ','
        << e.last_update_epoch << '\n';
  }
}

}  // namespace dynaprune
