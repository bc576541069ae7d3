// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dynaprune/cli.hpp"
#include "dynaprune/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "dynaprune: dynamic data pruning for sequence-model training.\n"
      "Loss-scored instance selection (static/random/easy/hard/easy2hard),\n"
      "time-wise point/chunk dropping and adaptive masking, and a\n"
      "duration-budgeted training harness with a built-in frame classifier."};
  app.require_subcommand(1);

  dynaprune::cli::CommonArgs common;
  std::uint64_t seed_value = 0;
  auto* seed_opt =
      app.add_option("--seed", seed_value, "Override the seed from the input file");
  app.add_option("--out", common.out_dir, "Output directory")
      ->capture_default_str();
  app.add_flag("--dry-run", common.dry_run,
               "Resolve and print what would run; write nothing");
  app.add_option("--parallel", common.parallel,
                 "Worker threads for independent sweep cells")
      ->capture_default_str();

  std::string synth_spec;
  auto* synth = app.add_subcommand(
      "synth", "Generate a synthetic dataset: WAV files plus manifest.jsonl");
  synth->add_option("spec", synth_spec, "Synthetic spec JSON file")->required();

  std::string run_config;
  auto* run = app.add_subcommand(
      "run", "Run one experiment config; writes epochs.jsonl and summary.json");
  run->add_option("config", run_config, "Experiment config JSON file")->required();

  std::string sweep_spec;
  auto* sweep = app.add_subcommand(
      "sweep", "Run a policy/ratio/seed grid; writes sweep.csv");
  sweep->add_option("spec", sweep_spec, "Sweep spec JSON file")->required();

  std::string report_target;
  auto* report = app.add_subcommand(
      "report", "Render a run directory or sweep.csv as tables");
  report->add_option("target", report_target, "Run directory, epochs.jsonl, or CSV")
      ->required();

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) common.seed = seed_value;

  try {
    if (synth->parsed()) {
      return dynaprune::cli::cmd_synth(synth_spec, common, std::cout);
    }
    if (run->parsed()) {
      return dynaprune::cli::cmd_run(run_config, common, std::cout);
    }
    if (sweep->parsed()) {
      return dynaprune::cli::cmd_sweep(sweep_spec, common, std::cout);
    }
    if (report->parsed()) {
      return dynaprune::cli::cmd_report(report_target, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
