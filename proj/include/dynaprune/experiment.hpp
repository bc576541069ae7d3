// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dynaprune/audio.hpp"
#include "dynaprune/learner.hpp"
#include "dynaprune/manifest.hpp"
#include "dynaprune/selection.hpp"
#include "dynaprune/synthetic.hpp"
#include "dynaprune/timewise.hpp"

namespace dynaprune {

struct DatasetSource {
  std::optional<std::filesystem::path> manifest;
  std::optional<SyntheticSpec> synthetic;

  void validate() const;
};

// Full description of one training run. Mirrors the JSON config accepted by
// the `run` subcommand field for field.
struct ExperimentConfig {
  DatasetSource dataset;
  // Optional held-out evaluation set. When absent, synthetic datasets derive
  // a smaller companion set from the same spec; manifest datasets evaluate
  // on the training instances.
  std::optional<DatasetSource> eval_dataset;
  SelectionConfig selection;
  std::optional<DropSpec> drop;
  std::optional<MaskSpec> mask;
  int epochs = 1;
  double clip_cap_s = 16.0;
  double batch_budget_s = 64.0;
  double step_size = 0.5;
  std::vector<int> eval_sample_rates = {16000};
  std::vector<double> bucket_boundaries_s = {8.0, 16.0};
  std::size_t frame_len = kDefaultFrameLen;
  std::size_t autocorr_lags = 4;
  int prune_start_epoch = 0;  // epochs before this train on everything
  int eval_every = 1;         // 0 = final epoch only
  std::uint64_t seed = 0;
  bool compare_baseline = false;  // also run k=1.0 without dropping
  bool record_score_trace = false;
  bool record_selection_trace = false;

  void validate() const;
};

struct EpochReport {
  int epoch = 0;
  std::optional<double> epsilon;  // easy2hard only
  int kept_count = 0;
  long long processed_sample_count = 0;
  double wall_clock_s = 0.0;  // training pipeline only; eval timed separately
  double mean_train_loss = 0.0;
  std::map<int, double> eval_error;           // sample rate -> frame error
  std::map<std::string, double> bucket_error; // duration bucket -> frame error
  double eval_wall_clock_s = 0.0;
};

struct ExperimentSummary {
  std::string policy;
  double instance_kept_ratio = 1.0;
  std::optional<double> time_kept_ratio;
  std::optional<std::string> drop_mode;
  int epochs = 0;
  std::uint64_t seed = 0;
  long long full_data_samples_per_epoch = 0;
  double processed_sample_ratio = 1.0;  // mean per-epoch, vs full data
  double mean_epoch_wall_clock_s = 0.0;
  double total_wall_clock_s = 0.0;
  double final_train_loss = 0.0;
  std::map<int, double> final_eval_error;
  std::map<std::string, double> final_bucket_error;
  // Present when compare_baseline was set.
  std::optional<double> speedup_vs_baseline;
  std::optional<double> baseline_mean_epoch_wall_clock_s;
  std::map<int, double> baseline_final_eval_error;
};

struct ExperimentResult {
  std::vector<EpochReport> reports;
  ExperimentSummary summary;
  // Kept ids per epoch; useful to tests, never serialized.
  std::vector<std::vector<std::string>> kept_ids_per_epoch;
  std::string score_trace_csv;      // filled when record_score_trace
  std::string selection_trace_csv;  // filled when record_selection_trace
};

using LearnerFactory =
    std::function<std::unique_ptr<Learner>(const ExperimentConfig&, int n_classes)>;

// The full dynamic-pruning loop: snapshot scores, select, drop/mask, batch,
// train, update scores, evaluate, report. Deterministic given the config.
ExperimentResult run_experiment(const ExperimentConfig& config,
                                const LearnerFactory& factory = {});

// Frame error split by duration bucket [0,b1), [b1,b2), ..., [bk,inf).
// Empty buckets are absent from the result, not zero.
std::map<std::string, double> bucketed_error(
    const Learner& learner, std::span<const AudioInstance> instances,
    std::span<const double> boundaries_s);

// Materializes a dataset source (manifest paths resolve relative to its
// parent directory).
std::vector<AudioInstance> load_dataset(const DatasetSource& source,
                                        std::size_t frame_len);

// Largest class label + 1 across the dataset.
int infer_n_classes(std::span<const AudioInstance> instances);

}  // namespace dynaprune
