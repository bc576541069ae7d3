// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#include "dynaprune/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "dynaprune/config_io.hpp"
#include "dynaprune/error.hpp"
#include "dynaprune/scoring.hpp"
#include "dynaprune/wav.hpp"

namespace dynaprune::cli {
namespace {

namespace fs = std::filesystem;

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

std::string fixed(double v, int precision = 4) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(precision) << v;
  return out.str();
}

void print_summary(const ExperimentSummary& summary, std::ostream& out) {
  out << "policy=" << summary.policy
      << " instance_kept=" << summary.instance_kept_ratio;
  if (summary.time_kept_ratio) {
    out << " time_kept=" << *summary.time_kept_ratio << " (" << *summary.drop_mode
        << ")";
  }
  out << " epochs=" << summary.epochs << " seed=" << summary.seed << '\n';
  out << "processed_sample_ratio=" << fixed(summary.processed_sample_ratio)
      << " mean_epoch_wall_clock_s=" << fixed(summary.mean_epoch_wall_clock_s)
      << '\n';
  for (const auto& [rate, err] : summary.final_eval_error) {
    out << "final_error@" << rate << "Hz=" << fixed(err) << '\n';
  }
  for (const auto& [bucket, err] : summary.final_bucket_error) {
    out << "final_error bucket " << bucket << " = " << fixed(err) << '\n';
  }
  if (summary.speedup_vs_baseline) {
    out << "speedup_vs_baseline=" << fixed(*summary.speedup_vs_baseline, 2)
        << "x\n";
  }
}

}  // namespace

int cmd_synth(const fs::path& spec_path, const CommonArgs& args,
              std::ostream& out) {
  SyntheticSpec spec = load_synthetic_spec(spec_path);
  if (args.seed) spec.seed = *args.seed;
  spec.validate();
  const std::vector<AudioInstance> instances = generate_synthetic(spec);
  if (args.dry_run) {
    out << "synth dry run: would write " << instances.size() << " wav files to "
        << (args.out_dir / "wav").string() << '\n';
    return 0;
  }
  ensure_dir(args.out_dir / "wav");
  Manifest manifest;
  for (const AudioInstance& inst : instances) {
    const std::string rel = "wav/" + inst.id + ".wav";
    write_wav_pcm16(args.out_dir / rel, inst.samples, inst.sample_rate);
    ManifestEntry entry;
    entry.id = inst.id;
    entry.wav_path = rel;
    entry.labels = inst.labels;
    entry.duration_s = inst.duration_s;
    manifest.entries.push_back(std::move(entry));
  }
  write_manifest(args.out_dir / "manifest.jsonl", manifest);
  out << "wrote " << instances.size() << " instances under "
      << args.out_dir.string() << '\n';
  return 0;
}

int cmd_run(const fs::path& config_path, const CommonArgs& args,
            std::ostream& out) {
  ExperimentConfig config = load_experiment_config(config_path);
  if (args.seed) config.seed = *args.seed;
  config.validate();
  if (args.dry_run) {
    out << experiment_config_to_json(config).dump(2) << '\n';
    // Epoch-0 selection from the initial (all-equal) scores.
    std::vector<AudioInstance> dataset =
        load_dataset(config.dataset, config.frame_len);
    std::vector<std::string> ids;
    ids.reserve(dataset.size());
    for (const AudioInstance& inst : dataset) ids.push_back(inst.id);
    ScoreTable scores = ScoreTable::init(ids, 0.0);
    Selector selector(config.selection);
    Rng rng = Rng::derive(config.seed, {Rng::hash_str("select"), 0});
    const std::vector<std::string> kept =
        selector.select(scores.snapshot(), 0, config.epochs, rng);
    out << "dry run: dataset of " << dataset.size() << ", epoch-0 selection keeps "
        << kept.size() << " instances\n";
    const std::size_t show = std::min<std::size_t>(kept.size(), 8);
    out << "first " << show << ':';
    for (std::size_t i = 0; i < show; ++i) out << ' ' << kept[i];
    out << '\n' << "dry run: nothing written\n";
    return 0;
  }
  const ExperimentResult result = run_experiment(config);
  ensure_dir(args.out_dir);
  write_epochs_jsonl(args.out_dir / "epochs.jsonl", result.reports);
  write_summary_json(args.out_dir / "summary.json", result.summary);
  if (config.record_score_trace) {
    std::ofstream trace(args.out_dir / "score_trace.csv", std::ios::trunc);
    trace << result.score_trace_csv;
  }
  if (config.record_selection_trace) {
    std::ofstream trace(args.out_dir / "selection_trace.csv", std::ios::trunc);
    trace << result.selection_trace_csv;
  }
  print_summary(result.summary, out);
  out << "reports written to " << args.out_dir.string() << '\n';
  return 0;
}

int cmd_sweep(const fs::path& sweep_path, const CommonArgs& args,
              std::ostream& out) {
  SweepSpec spec = load_sweep_spec(sweep_path);
  if (args.seed) {
    spec.seeds = {*args.seed};
  }
  spec.validate();
  const std::vector<SweepCell> cells = expand_cells(spec);
  if (args.dry_run) {
    out << "sweep dry run: " << cells.size() << " cells\n";
    return 0;
  }

  // Per-seed full-data baselines for the wall-clock column, run first so
  // parallel cells only read the map.
  std::map<std::uint64_t, double> baseline_wall;
  for (const std::uint64_t seed : spec.seeds) {
    if (baseline_wall.count(seed) != 0) continue;
    ExperimentConfig base = spec.base;
    base.selection = SelectionConfig{};
    base.selection.policy = PolicyKind::Random;
    base.selection.kept_ratio = 1.0;
    base.drop.reset();
    base.mask.reset();
    base.seed = seed;
    base.compare_baseline = false;
    const ExperimentResult result = run_experiment(base);
    baseline_wall[seed] = result.summary.mean_epoch_wall_clock_s;
  }

  std::vector<std::string> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::optional<std::string> first_error;
  const int workers = std::max(1, args.parallel);
  auto work = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        const SweepCell& cell = cells[i];
        const ExperimentResult result =
            run_experiment(cell_config(spec, cell));
        double final_error = 0.0;
        if (!result.summary.final_eval_error.empty()) {
          final_error = result.summary.final_eval_error.begin()->second;
        }
        const double ratio = result.summary.mean_epoch_wall_clock_s /
                             baseline_wall.at(cell.seed);
        rows[i] = sweep_csv_row(cell, final_error,
                                result.summary.processed_sample_ratio, ratio);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = e.what();
        return;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) throw Error("sweep cell failed: " + *first_error);

  ensure_dir(args.out_dir);
  const fs::path csv_path = args.out_dir / "sweep.csv";
  std::ofstream csv(csv_path, std::ios::trunc);
  if (!csv) throw IoError("cannot write " + csv_path.string());
  csv << kSweepCsvHeader << '\n';
  for (const std::string& row : rows) csv << row << '\n';
  out << "wrote " << cells.size() << " rows to " << csv_path.string() << '\n';
  return 0;
}

int cmd_report(const fs::path& target, std::ostream& out) {
  fs::path epochs_path = target;
  fs::path summary_path;
  if (fs::is_directory(target)) {
    epochs_path = target / "epochs.jsonl";
    summary_path = target / "summary.json";
  }
  if (epochs_path.extension() == ".csv") {
    std::ifstream in(epochs_path);
    if (!in) throw IoError("cannot open " + epochs_path.string());
    std::string line;
    while (std::getline(in, line)) {
      std::replace(line.begin(), line.end(), ',', '\t');
      out << line << '\n';
    }
    return 0;
  }
  const std::vector<EpochReport> reports = read_epochs_jsonl(epochs_path);
  out << std::left << std::setw(6) << "epoch" << std::setw(10) << "epsilon"
      << std::setw(7) << "kept" << std::setw(14) << "samples" << std::setw(10)
      << "loss";
  if (!reports.empty()) {
    for (const auto& [rate, err] : reports.back().eval_error) {
      out << std::setw(12) << ("err@" + std::to_string(rate));
    }
  }
  out << '\n';
  for (const EpochReport& r : reports) {
    out << std::left << std::setw(6) << r.epoch << std::setw(10)
        << (r.epsilon ? fixed(*r.epsilon) : std::string("-")) << std::setw(7)
        << r.kept_count << std::setw(14) << r.processed_sample_count
        << std::setw(10) << fixed(r.mean_train_loss);
    for (const auto& [rate, err] : r.eval_error) {
      out << std::setw(12) << fixed(err);
    }
    out << '\n';
  }
  if (!summary_path.empty() && fs::exists(summary_path)) {
    std::ifstream in(summary_path);
    nlohmann::json j = nlohmann::json::parse(in);
    out << "\nsummary:\n" << j.dump(2) << '\n';
  }
  return 0;
}

}  // namespace dynaprune::cli
