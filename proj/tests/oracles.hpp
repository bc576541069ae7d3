// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

// Test-only oracles: brute-force counterparts of the operations under test.
// Everything here stays independent of the implementation paths it checks.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dynaprune::test_oracle {

// Sort-based selection: order by (score, id) and slice. The reference for
// Easy/Hard selection on small datasets.
inline std::vector<std::string> sort_select(
    std::vector<std::pair<std::string, double>> snapshot, std::size_t m,
    bool hardest_first) {
  std::sort(snapshot.begin(), snapshot.end(),
            [hardest_first](const auto& a, const auto& b) {
              if (a.second != b.second) {
                return hardest_first ? a.second > b.second : a.second < b.second;
              }
              return a.first < b.first;
            });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < m && i < snapshot.size(); ++i) {
    out.push_back(snapshot[i].first);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// All m-element index subsets of {0..n-1}, each sorted ascending.
inline std::vector<std::vector<std::size_t>> enumerate_subsets(std::size_t n,
                                                               std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  const auto recurse = [&](auto&& self, std::size_t start) -> void {
    if (current.size() == m) {
      out.push_back(current);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      current.push_back(i);
      self(self, i + 1);
      current.pop_back();
    }
  };
  recurse(recurse, 0);
  return out;
}

// All placements of c disjoint chunks of length n in a signal of length
// total, as sorted vectors of chunk start offsets.
inline std::vector<std::vector<std::size_t>> enumerate_chunk_placements(
    std::size_t total, std::size_t c, std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  const auto recurse = [&](auto&& self, std::size_t start) -> void {
    if (current.size() == c) {
      out.push_back(current);
      return;
    }
    for (std::size_t s = start; s + n <= total; ++s) {
      current.push_back(s);
      self(self, s + n);
      current.pop_back();
    }
  };
  recurse(recurse, 0);
  return out;
}

// Kept indices implied by a set of chunk starts.
inline std::vector<std::uint32_t> kept_from_chunk_starts(
    std::size_t total, std::span<const std::size_t> starts, std::size_t n) {
  std::vector<bool> removed(total, false);
  for (const std::size_t s : starts) {
    for (std::size_t i = s; i < s + n; ++i) removed[i] = true;
  }
  std::vector<std::uint32_t> kept;
  for (std::size_t i = 0; i < total; ++i) {
    if (!removed[i]) kept.push_back(static_cast<std::uint32_t>(i));
  }
  return kept;
}

// True when `candidate` is a subsequence of `full` (two-pointer scan).
inline bool is_subsequence(std::span<const float> candidate,
                           std::span<const float> full) {
  std::size_t j = 0;
  for (std::size_t i = 0; i < full.size() && j < candidate.size(); ++i) {
    if (full[i] == candidate[j]) ++j;
  }
  return j == candidate.size();
}

// Maximal runs of removed indices, given the kept set of a signal.
inline std::vector<std::size_t> removed_run_lengths(
    std::size_t total, std::span<const std::uint32_t> kept) {
  std::vector<bool> keep(total, false);
  for (const std::uint32_t i : kept) keep[i] = true;
  std::vector<std::size_t> runs;
  std::size_t run = 0;
  for (std::size_t i = 0; i < total; ++i) {
    if (!keep[i]) {
      ++run;
    } else if (run > 0) {
      runs.push_back(run);
      run = 0;
    }
  }
  if (run > 0) runs.push_back(run);
  return runs;
}

// Spearman rank correlation with average ranks for ties.
inline double spearman(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const auto ranks = [n](std::span<const double> v) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
      const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
      for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
      i = j + 1;
    }
    return rank;
  };
  const std::vector<double> ra = ranks(a);
  const std::vector<double> rb = ranks(b);
  const double mean = (static_cast<double>(n) + 1.0) / 2.0;
  double cov = 0.0;
  double var_a = 0.0;
  double var_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = ra[i] - mean;
    const double db = rb[i] - mean;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0) return 0.0;
  return cov / std::sqrt(var_a * var_b);
}

}  // namespace dynaprune::test_oracle
