// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>

namespace dynaprune::cli {

struct CommonArgs {
  std::optional<std::uint64_t> seed;  // overrides file-level seeds
  std::filesystem::path out_dir = "out";
  bool dry_run = false;
  int parallel = 1;
};

// Writes PCM-16 WAVs plus a JSON-lines manifest for a synthetic spec file.
// Validates before writing anything; re-running with the same seed yields a
// byte-identical manifest.
int cmd_synth(const std::filesystem::path& spec_path, const CommonArgs& args,
              std::ostream& out);

// Runs one experiment config; writes epochs.jsonl and summary.json (plus
// optional trace CSVs) under the output directory. --dry-run prints the
// resolved config and the epoch-0 selection without writing.
int cmd_run(const std::filesystem::path& config_path, const CommonArgs& args,
            std::ostream& out);

// Runs a sweep spec; writes sweep.csv with one row per cell. Cells may run
// in parallel; row order is always the declared order.
int cmd_sweep(const std::filesystem::path& sweep_path, const CommonArgs& args,
              std::ostream& out);

// Renders a run directory (epochs.jsonl + summary.json) or a sweep.csv as
// aligned tables.
int cmd_report(const std::filesystem::path& target, std::ostream& out);

}  // namespace dynaprune::cli
