// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#include "dynaprune/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "dynaprune/batching.hpp"
#include "dynaprune/error.hpp"
#include "dynaprune/scoring.hpp"
#include "dynaprune/signal_ops.hpp"

namespace dynaprune {
namespace {

constexpr std::uint64_t kSelectTag = Rng::hash_str("select");
constexpr std::uint64_t kDropTag = Rng::hash_str("drop");
constexpr std::uint64_t kMaskTag = Rng::hash_str("mask");

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  const auto elapsed = Clock::now() - start;
  const double s =
      std::chrono::duration_cast<std::chrono::duration<double>>(elapsed).count();
  return std::max(s, 1e-9);
}

std::string bucket_label(double lo, std::optional<double> hi) {
  std::ostringstream out;
  out << '[' << lo << ',';
  if (hi) {
    out << *hi;
  } else {
    out << "inf";
  }
  out << ')';
  return out.str();
}

// Derived evaluation companion for synthetic runs: same task, fresh seed,
// a fifth of the size.
SyntheticSpec derived_eval_spec(const SyntheticSpec& train) {
  SyntheticSpec spec = train;
  spec.n_instances = std::max<std::size_t>(20, train.n_instances / 5);
  spec.seed = Rng::mix(train.seed ^ Rng::hash_str("eval-set"));
  return spec;
}

}  // namespace

void DatasetSource::validate() const {
  if (manifest.has_value() == synthetic.has_value()) {
    throw ValidationError("dataset: exactly one of manifest or synthetic");
  }
  if (synthetic) synthetic->validate();
}

void ExperimentConfig::validate() const {
  dataset.validate();
  if (eval_dataset) eval_dataset->validate();
  selection.validate();
  if (drop) drop->validate();
  if (mask) mask->validate();
  if (epochs < 1) throw ValidationError("config: epochs must be >= 1");
  if (!(clip_cap_s > 0.0) || !(batch_budget_s > 0.0)) {
    throw ValidationError("config: budgets must be positive");
  }
  if (clip_cap_s > batch_budget_s) {
    throw ValidationError("config: clip_cap_s must be <= batch_budget_s");
  }
  if (frame_len == 0) throw ValidationError("config: frame_len must be >= 1");
  if (prune_start_epoch < 0) {
    throw ValidationError("config: prune_start_epoch must be >= 0");
  }
  if (eval_every < 0) throw ValidationError("config: eval_every must be >= 0");
  for (const int rate : eval_sample_rates) {
    if (rate <= 0) throw ValidationError("config: eval sample rates must be positive");
  }
  for (std::size_t i = 1; i < bucket_boundaries_s.size(); ++i) {
    if (!(bucket_boundaries_s[i] > bucket_boundaries_s[i - 1])) {
      throw ValidationError("config: bucket boundaries must be strictly increasing");
    }
  }
  if (!bucket_boundaries_s.empty() && !(bucket_boundaries_s.front() > 0.0)) {
    throw ValidationError("config: bucket boundaries must be positive");
  }
}

std::vector<AudioInstance> load_dataset(const DatasetSource& source,
                                        std::size_t frame_len) {
  source.validate();
  if (source.synthetic) {
    SyntheticSpec spec = *source.synthetic;
    spec.frame_len = frame_len;
    return generate_synthetic(spec);
  }
  const Manifest manifest = load_manifest(*source.manifest);
  return load_instances(manifest, source.manifest->parent_path(), frame_len);
}

int infer_n_classes(std::span<const AudioInstance> instances) {
  int max_label = -1;
  for (const AudioInstance& inst : instances) {
    for (const int label : inst.labels) {
      if (label < 0) throw ValidationError("negative class label in dataset");
      max_label = std::max(max_label, label);
    }
  }
  if (max_label < 1) {
    throw ValidationError("dataset must contain at least two classes");
  }
  return max_label + 1;
}

std::map<std::string, double> bucketed_error(
    const Learner& learner, std::span<const AudioInstance> instances,
    std::span<const double> boundaries_s) {
  for (std::size_t i = 1; i < boundaries_s.size(); ++i) {
    if (!(boundaries_s[i] > boundaries_s[i - 1])) {
      throw ArgumentError("bucketed_error: boundaries must be strictly increasing");
    }
  }
  const std::size_t n_buckets = boundaries_s.size() + 1;
  std::vector<long long> wrong(n_buckets, 0);
  std::vector<long long> total(n_buckets, 0);
  for (const AudioInstance& inst : instances) {
    std::size_t b = 0;
    while (b < boundaries_s.size() && inst.duration_s >= boundaries_s[b]) ++b;
    const auto [w, t] = learner.frame_errors(inst);
    wrong[b] += w;
    total[b] += t;
  }
  std::map<std::string, double> out;
  for (std::size_t b = 0; b < n_buckets; ++b) {
    if (total[b] == 0) continue;  // absent, not zero
    const double lo = b == 0 ? 0.0 : boundaries_s[b - 1];
    const std::optional<double> hi =
        b < boundaries_s.size() ? std::optional<double>(boundaries_s[b])
                                : std::nullopt;
    out[bucket_label(lo, hi)] =
        static_cast<double>(wrong[b]) / static_cast<double>(total[b]);
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const LearnerFactory& factory) {
  config.validate();

  // Dataset, capped once: the clip cap is epoch-invariant preprocessing.
  std::vector<AudioInstance> dataset = load_dataset(config.dataset, config.frame_len);
  if (dataset.empty()) throw ValidationError("config: dataset is empty");
  for (AudioInstance& inst : dataset) {
    if (inst.duration_s > config.clip_cap_s) {
      inst = truncate_to(inst, config.clip_cap_s, config.frame_len);
    }
  }
  std::unordered_map<std::string, std::size_t> index_of;
  std::vector<std::string> ids;
  ids.reserve(dataset.size());
  long long full_samples = 0;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (!index_of.emplace(dataset[i].id, i).second) {
      throw ValidationError("dataset: duplicate id '" + dataset[i].id + "'");
    }
    ids.push_back(dataset[i].id);
    full_samples += static_cast<long long>(dataset[i].samples.size());
  }

  const int n_classes = infer_n_classes(dataset);
  std::unique_ptr<Learner> learner;
  if (factory) {
    learner = factory(config, n_classes);
  } else {
    ToyLearnerConfig lc;
    lc.n_classes = n_classes;
    lc.features.frame_len = config.frame_len;
    lc.features.autocorr_lags = config.autocorr_lags;
    lc.seed = config.seed;
    learner = std::make_unique<ToyFrameClassifier>(lc);
  }

  // Evaluation sets are prepared once per sample rate: resample (when the
  // rate differs from native), then z-normalize.
  std::vector<AudioInstance> eval_native;
  if (config.eval_dataset) {
    eval_native = load_dataset(*config.eval_dataset, config.frame_len);
  } else if (config.dataset.synthetic) {
    eval_native = generate_synthetic([&] {
      SyntheticSpec spec = derived_eval_spec(*config.dataset.synthetic);
      spec.frame_len = config.frame_len;
      return spec;
    }());
  } else {
    eval_native = dataset;
  }
  std::map<int, std::vector<AudioInstance>> eval_sets;
  for (const int rate : config.eval_sample_rates) {
    std::vector<AudioInstance> prepared;
    prepared.reserve(eval_native.size());
    for (const AudioInstance& inst : eval_native) {
      AudioInstance e = rate == inst.sample_rate
                            ? inst
                            : resample_instance(inst, rate, config.frame_len);
      z_normalize(e.samples);
      prepared.push_back(std::move(e));
    }
    eval_sets.emplace(rate, std::move(prepared));
  }

  ScoreTable scores = ScoreTable::init(ids, 0.0);
  Selector selector(config.selection);
  const bool easy2hard = config.selection.policy == PolicyKind::Easy2hard;

  ExperimentResult result;
  std::ostringstream score_trace;
  std::ostringstream selection_trace;
  if (config.record_score_trace) {
    score_trace << ScoreTable::trace_csv_header() << '\n';
  }
  if (config.record_selection_trace) {
    selection_trace << selection_trace_header() << '\n';
  }

  double total_train_wall = 0.0;
  long long total_processed = 0;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const auto train_start = Clock::now();

    // Selection reads the scores as updated through the previous epoch.
    std::vector<std::string> kept;
    if (epoch < config.prune_start_epoch) {
      kept = ids;
      std::sort(kept.begin(), kept.end());
    } else {
      Rng select_rng = Rng::derive(config.seed, {kSelectTag, static_cast<std::uint64_t>(epoch)});
      kept = selector.select(scores.snapshot(), epoch, config.epochs, select_rng);
    }

    // Per-instance pipeline: drop -> z-normalize -> mask. Each instance gets
    // its own rng streams keyed by (seed, purpose, epoch, id), so results do
    // not depend on batch composition and masking never perturbs dropping.
    std::vector<AudioInstance> prepared;
    prepared.reserve(kept.size());
    long long processed = 0;
    for (const std::string& id : kept) {
      const AudioInstance& base = dataset[index_of.at(id)];
      AudioInstance inst = base;
      if (config.drop) {
        const std::size_t total = base.samples.size();
        const std::size_t target =
            target_kept_length(total, config.drop->time_kept_ratio);
        Rng drop_rng = Rng::derive(
            config.seed,
            {kDropTag, static_cast<std::uint64_t>(epoch), Rng::hash_str(id)});
        std::vector<std::uint32_t> kept_idx =
            config.drop->mode == DropSpec::Mode::Point
                ? draw_point_kept(total, target, drop_rng)
                : draw_chunk_kept(total, target, config.drop->chunk_len, drop_rng);
        if (kept_idx.size() != total) {
          inst = select_samples(base, kept_idx, config.frame_len);
        }
      }
      if (inst.samples.size() >= 2) z_normalize(inst.samples);
      if (config.mask) {
        Rng mask_rng = Rng::derive(
            config.seed,
            {kMaskTag, static_cast<std::uint64_t>(epoch), Rng::hash_str(id)});
        apply_time_mask(inst.samples, inst.sample_rate, *config.mask, mask_rng);
      }
      processed += static_cast<long long>(inst.samples.size());
      prepared.push_back(std::move(inst));
    }

    const auto batches = build_batches(std::move(prepared), config.clip_cap_s,
                                       config.batch_budget_s, config.frame_len);

    std::vector<std::pair<std::string, double>> losses;
    losses.reserve(kept.size());
    double loss_sum = 0.0;
    for (const auto& batch : batches) {
      auto batch_losses = learner->train_batch(batch, config.step_size);
      for (auto& entry : batch_losses) {
        loss_sum += entry.second;
        losses.push_back(std::move(entry));
      }
    }
    scores.update(losses, epoch);

    EpochReport report;
    report.epoch = epoch;
    if (easy2hard) {
      EpsilonSchedule schedule = *config.selection.epsilon;
      schedule.total_epochs = config.epochs;
      report.epsilon = epsilon_at(schedule, epoch);
    }
    report.kept_count = static_cast<int>(kept.size());
    report.processed_sample_count = processed;
    report.mean_train_loss =
        losses.empty() ? 0.0 : loss_sum / static_cast<double>(losses.size());
    report.wall_clock_s = seconds_since(train_start);
    total_train_wall += report.wall_clock_s;
    total_processed += processed;

    const bool final_epoch = epoch == config.epochs - 1;
    const bool do_eval =
        !config.eval_sample_rates.empty() &&
        (final_epoch || (config.eval_every > 0 && epoch % config.eval_every == 0));
    if (do_eval) {
      const auto eval_start = Clock::now();
      for (const auto& [rate, set] : eval_sets) {
        report.eval_error[rate] = learner->evaluate(set);
      }
      const auto native_it = eval_sets.find(eval_native.front().sample_rate);
      if (native_it != eval_sets.end()) {
        report.bucket_error = bucketed_error(*learner, native_it->second,
                                             config.bucket_boundaries_s);
      }
      report.eval_wall_clock_s = seconds_since(eval_start);
    }

    if (config.record_score_trace) scores.append_trace_csv(score_trace);
    if (config.record_selection_trace) {
      write_selection_trace_row(selection_trace, epoch, config.selection.policy,
                                report.epsilon, kept);
    }

    result.kept_ids_per_epoch.push_back(std::move(kept));
    result.reports.push_back(std::move(report));
  }

  ExperimentSummary& summary = result.summary;
  summary.policy = policy_name(config.selection.policy);
  summary.instance_kept_ratio = config.selection.kept_ratio;
  if (config.drop) {
    summary.time_kept_ratio = config.drop->time_kept_ratio;
    summary.drop_mode =
        config.drop->mode == DropSpec::Mode::Point ? "point" : "chunk";
  }
  summary.epochs = config.epochs;
  summary.seed = config.seed;
  summary.full_data_samples_per_epoch = full_samples;
  summary.processed_sample_ratio =
      static_cast<double>(total_processed) /
      (static_cast<double>(full_samples) * config.epochs);
  summary.mean_epoch_wall_clock_s = total_train_wall / config.epochs;
  summary.total_wall_clock_s = total_train_wall;
  summary.final_train_loss = result.reports.back().mean_train_loss;
  summary.final_eval_error = result.reports.back().eval_error;
  summary.final_bucket_error = result.reports.back().bucket_error;
  result.score_trace_csv = score_trace.str();
  result.selection_trace_csv = selection_trace.str();

  if (config.compare_baseline) {
    ExperimentConfig baseline = config;
    baseline.compare_baseline = false;
    baseline.selection = SelectionConfig{};
    baseline.selection.policy = PolicyKind::Random;
    baseline.selection.kept_ratio = 1.0;
    baseline.drop.reset();
    baseline.mask.reset();
    baseline.record_score_trace = false;
    baseline.record_selection_trace = false;
    const ExperimentResult base = run_experiment(baseline, factory);
    summary.baseline_mean_epoch_wall_clock_s =
        base.summary.mean_epoch_wall_clock_s;
    summary.baseline_final_eval_error = base.summary.final_eval_error;
    summary.speedup_vs_baseline =
        base.summary.mean_epoch_wall_clock_s / summary.mean_epoch_wall_clock_s;
  }
  return result;
}

}  // namespace dynaprune
