// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynaprune/experiment.hpp"

namespace dynaprune {

// JSON <-> config structs. Parsers validate and report unknown enum values
// with the accepted alternatives spelled out.
SyntheticSpec synthetic_spec_from_json(const nlohmann::json& j);
nlohmann::json synthetic_spec_to_json(const SyntheticSpec& spec);

ExperimentConfig experiment_config_from_json(const nlohmann::json& j,
                                             const std::filesystem::path& base_dir);
nlohmann::json experiment_config_to_json(const ExperimentConfig& config);

ExperimentConfig load_experiment_config(const std::filesystem::path& path);
SyntheticSpec load_synthetic_spec(const std::filesystem::path& path);

nlohmann::json epoch_report_to_json(const EpochReport& report);
EpochReport epoch_report_from_json(const nlohmann::json& j);
nlohmann::json summary_to_json(const ExperimentSummary& summary);

void write_epochs_jsonl(const std::filesystem::path& path,
                        const std::vector<EpochReport>& reports);
std::vector<EpochReport> read_epochs_jsonl(const std::filesystem::path& path);
void write_summary_json(const std::filesystem::path& path,
                        const ExperimentSummary& summary);

// Policy sweep: cross product of policies x instance kept ratios x time kept
// ratios x seeds over a shared base config.
struct SweepSpec {
  ExperimentConfig base;
  std::vector<PolicyKind> policies;
  std::vector<double> instance_kept;
  std::vector<double> time_kept;  // 1.0 = no dropping
  std::vector<std::uint64_t> seeds;
  DropSpec::Mode drop_mode = DropSpec::Mode::Chunk;
  std::size_t chunk_len = 160;
  std::size_t max_cells = 256;

  std::size_t cell_count() const;
  void validate() const;
};

SweepSpec sweep_spec_from_json(const nlohmann::json& j,
                               const std::filesystem::path& base_dir);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

struct SweepCell {
  PolicyKind policy;
  double instance_kept;
  double time_kept;
  std::uint64_t seed;
};

// Cells in declared order: policy, then instance kept, time kept, seed.
std::vector<SweepCell> expand_cells(const SweepSpec& spec);
ExperimentConfig cell_config(const SweepSpec& spec, const SweepCell& cell);

// Stable CSV columns; the trailing wall-clock column is the only
// non-deterministic one.
inline const char* kSweepCsvHeader =
    "policy,instance_kept,time_kept,seed,final_error,processed_sample_ratio,"
    "wallclock_ratio";
std::string sweep_csv_row(const SweepCell& cell, double final_error,
                          double processed_ratio, double wallclock_ratio);

}  // namespace dynaprune
