// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#include "dynaprune/config_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "dynaprune/error.hpp"

namespace dynaprune {
namespace {

using nlohmann::json;

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

DatasetSource dataset_source_from_json(const json& j,
                                       const std::filesystem::path& base_dir) {
  DatasetSource source;
  if (j.contains("manifest")) {
    std::filesystem::path p = j.at("manifest").get<std::string>();
    source.manifest = p.is_absolute() ? p : base_dir / p;
  }
  if (j.contains("synthetic")) {
    source.synthetic = synthetic_spec_from_json(j.at("synthetic"));
  }
  source.validate();
  return source;
}

json dataset_source_to_json(const DatasetSource& source) {
  json j;
  if (source.manifest) j["manifest"] = source.manifest->string();
  if (source.synthetic) j["synthetic"] = synthetic_spec_to_json(*source.synthetic);
  return j;
}

std::string format_ratio(double v) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << v;
  return out.str();
}

}  // namespace

SyntheticSpec synthetic_spec_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("synthetic spec: expected an object");
  SyntheticSpec spec;
  try {
    spec.n_instances = j.at("n_instances").get<std::size_t>();
    spec.n_classes = j.value("n_classes", spec.n_classes);
    if (j.contains("duration_range_s")) {
      const auto& range = j.at("duration_range_s");
      if (!range.is_array() || range.size() != 2) {
        throw ParseError("synthetic spec: duration_range_s must be [min, max]");
      }
      spec.duration_min_s = range[0].get<double>();
      spec.duration_max_s = range[1].get<double>();
    }
    if (j.contains("strata")) {
      spec.strata.clear();
      for (const auto& s : j.at("strata")) {
        Stratum stratum;
        stratum.fraction = s.at("fraction").get<double>();
        stratum.noise_sigma = s.at("noise_sigma").get<double>();
        spec.strata.push_back(stratum);
      }
    }
    spec.seed = j.value("seed", spec.seed);
    spec.sample_rate = j.value("sample_rate", spec.sample_rate);
    spec.frame_len = j.value("frame_len", spec.frame_len);
    spec.amplitude = j.value("amplitude", spec.amplitude);
    spec.base_freq_hz = j.value("base_freq_hz", spec.base_freq_hz);
  } catch (const json::exception& e) {
    throw ParseError(std::string("synthetic spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

json synthetic_spec_to_json(const SyntheticSpec& spec) {
  json strata = json::array();
  for (const Stratum& s : spec.strata) {
    strata.push_back({{"fraction", s.fraction}, {"noise_sigma", s.noise_sigma}});
  }
  return json{{"n_instances", spec.n_instances},
              {"n_classes", spec.n_classes},
              {"duration_range_s", {spec.duration_min_s, spec.duration_max_s}},
              {"strata", strata},
              {"seed", spec.seed},
              {"sample_rate", spec.sample_rate},
              {"frame_len", spec.frame_len},
              {"amplitude", spec.amplitude},
              {"base_freq_hz", spec.base_freq_hz}};
}

ExperimentConfig experiment_config_from_json(
    const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ParseError("config: expected a JSON object");
  ExperimentConfig config;
  try {
    config.dataset = dataset_source_from_json(j.at("dataset"), base_dir);
    if (j.contains("eval_dataset")) {
      config.eval_dataset =
          dataset_source_from_json(j.at("eval_dataset"), base_dir);
    }
    const json& sel = j.at("selection");
    config.selection.policy = parse_policy(sel.at("policy").get<std::string>());
    config.selection.kept_ratio = sel.at("kept_ratio").get<double>();
    if (config.selection.policy == PolicyKind::Easy2hard) {
      EpsilonSchedule schedule;
      if (sel.contains("epsilon")) {
        const json& eps = sel.at("epsilon");
        schedule.start_value = eps.value("start", 1.0);
        schedule.end_value = eps.value("end", 1.0 / 3.0);
      }
      config.selection.epsilon = schedule;
    }
    if (j.contains("drop")) {
      const json& d = j.at("drop");
      DropSpec drop;
      const std::string mode = d.value("mode", "chunk");
      if (mode == "point") {
        drop.mode = DropSpec::Mode::Point;
      } else if (mode == "chunk") {
        drop.mode = DropSpec::Mode::Chunk;
      } else {
        throw ValidationError("config: drop mode '" + mode +
                              "' (valid: point, chunk)");
      }
      drop.time_kept_ratio = d.at("time_kept_ratio").get<double>();
      drop.chunk_len = d.value("chunk_len", drop.chunk_len);
      config.drop = drop;
    }
    if (j.contains("mask")) {
      const json& m = j.at("mask");
      MaskSpec mask;
      mask.max_mask_len_s = m.value("max_mask_len_s", mask.max_mask_len_s);
      mask.masks_per_second = m.value("masks_per_second", mask.masks_per_second);
      config.mask = mask;
    }
    config.epochs = j.value("epochs", config.epochs);
    config.clip_cap_s = j.value("clip_cap_s", config.clip_cap_s);
    config.batch_budget_s = j.value("batch_budget_s", config.batch_budget_s);
    config.step_size = j.value("step_size", config.step_size);
    if (j.contains("eval_sample_rates")) {
      config.eval_sample_rates =
          j.at("eval_sample_rates").get<std::vector<int>>();
    }
    if (j.contains("bucket_boundaries_s")) {
      config.bucket_boundaries_s =
          j.at("bucket_boundaries_s").get<std::vector<double>>();
    }
    config.frame_len = j.value("frame_len", config.frame_len);
    config.autocorr_lags = j.value("autocorr_lags", config.autocorr_lags);
    config.prune_start_epoch = j.value("prune_start_epoch", config.prune_start_epoch);
    config.eval_every = j.value("eval_every", config.eval_every);
    config.seed = j.value("seed", config.seed);
    config.compare_baseline = j.value("compare_baseline", config.compare_baseline);
    config.record_score_trace = j.value("record_score_trace", false);
    config.record_selection_trace = j.value("record_selection_trace", false);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  config.validate();
  return config;
}

json experiment_config_to_json(const ExperimentConfig& config) {
  json j;
  j["dataset"] = dataset_source_to_json(config.dataset);
  if (config.eval_dataset) {
    j["eval_dataset"] = dataset_source_to_json(*config.eval_dataset);
  }
  json sel{{"policy", policy_name(config.selection.policy)},
           {"kept_ratio", config.selection.kept_ratio}};
  if (config.selection.epsilon) {
    sel["epsilon"] = {{"start", config.selection.epsilon->start_value},
                      {"end", config.selection.epsilon->end_value}};
  }
  j["selection"] = sel;
  if (config.drop) {
    j["drop"] = {
        {"mode", config.drop->mode == DropSpec::Mode::Point ? "point" : "chunk"},
        {"time_kept_ratio", config.drop->time_kept_ratio},
        {"chunk_len", config.drop->chunk_len}};
  }
  if (config.mask) {
    j["mask"] = {{"max_mask_len_s", config.mask->max_mask_len_s},
                 {"masks_per_second", config.mask->masks_per_second}};
  }
  j["epochs"] = config.epochs;
  j["clip_cap_s"] = config.clip_cap_s;
  j["batch_budget_s"] = config.batch_budget_s;
  j["step_size"] = config.step_size;
  j["eval_sample_rates"] = config.eval_sample_rates;
  j["bucket_boundaries_s"] = config.bucket_boundaries_s;
  j["frame_len"] = config.frame_len;
  j["autocorr_lags"] = config.autocorr_lags;
  j["prune_start_epoch"] = config.prune_start_epoch;
  j["eval_every"] = config.eval_every;
  j["seed"] = config.seed;
  j["compare_baseline"] = config.compare_baseline;
  return j;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return experiment_config_from_json(load_json_file(path),
                                     path.parent_path());
}

SyntheticSpec load_synthetic_spec(const std::filesystem::path& path) {
  return synthetic_spec_from_json(load_json_file(path));
}

json epoch_report_to_json(const EpochReport& report) {
  json j;
  j["epoch"] = report.epoch;
  if (report.epsilon) {
    j["epsilon"] = *report.epsilon;
  } else {
    j["epsilon"] = nullptr;
  }
  j["kept_count"] = report.kept_count;
  j["processed_sample_count"] = report.processed_sample_count;
  j["mean_train_loss"] = report.mean_train_loss;
  json eval = json::object();
  for (const auto& [rate, err] : report.eval_error) {
    eval[std::to_string(rate)] = err;
  }
  j["eval_error"] = eval;
  j["bucket_error"] = report.bucket_error;
  j["wall_clock_s"] = report.wall_clock_s;
  j["eval_wall_clock_s"] = report.eval_wall_clock_s;
  return j;
}

EpochReport epoch_report_from_json(const json& j) {
  EpochReport report;
  report.epoch = j.at("epoch").get<int>();
  if (!j.at("epsilon").is_null()) report.epsilon = j.at("epsilon").get<double>();
  report.kept_count = j.at("kept_count").get<int>();
  report.processed_sample_count = j.at("processed_sample_count").get<long long>();
  report.mean_train_loss = j.at("mean_train_loss").get<double>();
  for (const auto& [rate, err] : j.at("eval_error").items()) {
    report.eval_error[std::stoi(rate)] = err.get<double>();
  }
  for (const auto& [bucket, err] : j.at("bucket_error").items()) {
    report.bucket_error[bucket] = err.get<double>();
  }
  report.wall_clock_s = j.at("wall_clock_s").get<double>();
  report.eval_wall_clock_s = j.at("eval_wall_clock_s").get<double>();
  return report;
}

json summary_to_json(const ExperimentSummary& summary) {
  json j;
  j["policy"] = summary.policy;
  j["instance_kept_ratio"] = summary.instance_kept_ratio;
  if (summary.time_kept_ratio) {
    j["time_kept_ratio"] = *summary.time_kept_ratio;
    j["drop_mode"] = *summary.drop_mode;
  } else {
    j["time_kept_ratio"] = nullptr;
    j["drop_mode"] = nullptr;
  }
  j["epochs"] = summary.epochs;
  j["seed"] = summary.seed;
  j["full_data_samples_per_epoch"] = summary.full_data_samples_per_epoch;
  j["processed_sample_ratio"] = summary.processed_sample_ratio;
  j["final_train_loss"] = summary.final_train_loss;
  json eval = json::object();
  for (const auto& [rate, err] : summary.final_eval_error) {
    eval[std::to_string(rate)] = err;
  }
  j["final_eval_error"] = eval;
  j["final_bucket_error"] = summary.final_bucket_error;
  j["mean_epoch_wall_clock_s"] = summary.mean_epoch_wall_clock_s;
  j["total_wall_clock_s"] = summary.total_wall_clock_s;
  if (summary.speedup_vs_baseline) {
    j["speedup_vs_baseline"] = *summary.speedup_vs_baseline;
    j["baseline_mean_epoch_wall_clock_s"] =
        *summary.baseline_mean_epoch_wall_clock_s;
    json base_eval = json::object();
    for (const auto& [rate, err] : summary.baseline_final_eval_error) {
      base_eval[std::to_string(rate)] = err;
    }
    j["baseline_final_eval_error"] = base_eval;
  }
  return j;
}

void write_epochs_jsonl(const std::filesystem::path& path,
                        const std::vector<EpochReport>& reports) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  for (const EpochReport& r : reports) {
    out << epoch_report_to_json(r).dump() << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<EpochReport> read_epochs_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<EpochReport> reports;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      reports.push_back(epoch_report_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(path.string() + " line " + std::to_string(line_no) +
                       ": " + e.what());
    }
  }
  return reports;
}

void write_summary_json(const std::filesystem::path& path,
                        const ExperimentSummary& summary) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << summary_to_json(summary).dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

std::size_t SweepSpec::cell_count() const {
  return policies.size() * instance_kept.size() * time_kept.size() * seeds.size();
}

void SweepSpec::validate() const {
  base.validate();
  if (policies.empty() || instance_kept.empty() || time_kept.empty() ||
      seeds.empty()) {
    throw ValidationError("sweep: every axis needs at least one value");
  }
  for (const double k : instance_kept) {
    if (!(k > 0.0) || k > 1.0) {
      throw ValidationError("sweep: instance kept ratios must be in (0, 1]");
    }
  }
  for (const double k : time_kept) {
    if (!(k > 0.0) || k > 1.0) {
      throw ValidationError("sweep: time kept ratios must be in (0, 1]");
    }
  }
  if (cell_count() > max_cells) {
    throw ValidationError("sweep: " + std::to_string(cell_count()) +
                          " cells exceed the cap of " +
                          std::to_string(max_cells));
  }
}

SweepSpec sweep_spec_from_json(const json& j,
                               const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ParseError("sweep: expected a JSON object");
  SweepSpec spec;
  try {
    spec.base = experiment_config_from_json(j.at("base"), base_dir);
    for (const auto& name : j.at("policies")) {
      spec.policies.push_back(parse_policy(name.get<std::string>()));
    }
    spec.instance_kept = j.at("instance_kept").get<std::vector<double>>();
    spec.time_kept = j.value("time_kept", std::vector<double>{1.0});
    spec.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    const std::string mode = j.value("drop_mode", "chunk");
    if (mode == "point") {
      spec.drop_mode = DropSpec::Mode::Point;
    } else if (mode == "chunk") {
      spec.drop_mode = DropSpec::Mode::Chunk;
    } else {
      throw ValidationError("sweep: drop mode '" + mode +
                            "' (valid: point, chunk)");
    }
    spec.chunk_len = j.value("chunk_len", spec.chunk_len);
    spec.max_cells = j.value("max_cells", spec.max_cells);
  } catch (const json::exception& e) {
    throw ParseError(std::string("sweep: ") + e.what());
  }
  spec.validate();
  return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  return sweep_spec_from_json(load_json_file(path), path.parent_path());
}

std::vector<SweepCell> expand_cells(const SweepSpec& spec) {
  std::vector<SweepCell> cells;
  cells.reserve(spec.cell_count());
  for (const PolicyKind policy : spec.policies) {
    for (const double ik : spec.instance_kept) {
      for (const double tk : spec.time_kept) {
        for (const std::uint64_t seed : spec.seeds) {
          cells.push_back({policy, ik, tk, seed});
        }
      }
    }
  }
  return cells;
}

ExperimentConfig cell_config(const SweepSpec& spec, const SweepCell& cell) {
  ExperimentConfig config = spec.base;
  config.selection = SelectionConfig{};
  config.selection.policy = cell.policy;
  config.selection.kept_ratio = cell.instance_kept;
  if (cell.policy == PolicyKind::Easy2hard) {
    config.selection.epsilon = EpsilonSchedule{};
  }
  if (cell.time_kept < 1.0) {
    DropSpec drop;
    drop.mode = spec.drop_mode;
    drop.time_kept_ratio = cell.time_kept;
    drop.chunk_len = spec.chunk_len;
    config.drop = drop;
  } else {
    config.drop.reset();
  }
  config.seed = cell.seed;
  config.compare_baseline = false;
  return config;
}

std::string sweep_csv_row(const SweepCell& cell, double final_error,
                          double processed_ratio, double wallclock_ratio) {
  std::ostringstream out;
  out << policy_name(cell.policy) << ',' << format_ratio(cell.instance_kept)
      << ',' << format_ratio(cell.time_kept) << ',' << cell.seed << ','
      << format_ratio(final_error) << ',' << format_ratio(processed_ratio)
      << ',' << format_ratio(wallclock_ratio);
  return out.str();
}

}  // namespace dynaprune
