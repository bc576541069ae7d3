// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dynaprune/audio.hpp"

namespace dynaprune {

// Training-model contract. train_batch returns one finite, nonnegative mean
// loss per input id; evaluate returns a frame error rate in [0, 1].
// parameters()/set_parameters() exist so determinism can be asserted.
class Learner {
 public:
  virtual ~Learner() = default;

  // One SGD step on the batch's mean loss. Returns the pre-step per-instance
  // mean losses: scoring reuses the loss observed during training.
  virtual std::vector<std::pair<std::string, double>> train_batch(
      std::span<const AudioInstance> batch, double step_size) = 0;

  virtual double evaluate(std::span<const AudioInstance> instances) const = 0;

  // (wrong, total) frame counts for one instance; evaluate() and bucketed
  // error reports are built on this.
  virtual std::pair<long long, long long> frame_errors(
      const AudioInstance& instance) const = 0;

  virtual std::vector<double> parameters() const = 0;
  virtual void set_parameters(std::span<const double> params) = 0;
};

// Per-frame summary statistics: mean, energy, zero-crossing rate, and
// normalized autocorrelations at lags stride, 2*stride, ..., lags*stride.
// Striding the lags spreads periodic content across the cosine curve, which
// keeps the class geometry well conditioned for the linear model. The
// features depend only on the frame's own samples, so time-wise dropping
// changes the frame count, never the feature dimensionality.
struct FeatureConfig {
  std::size_t frame_len = kDefaultFrameLen;
  std::size_t autocorr_lags = 4;
  std::size_t autocorr_stride = 4;

  std::size_t dim() const { return 3 + autocorr_lags; }
};

class FrameFeaturizer {
 public:
  explicit FrameFeaturizer(FeatureConfig config);

  std::size_t dim() const { return config_.dim(); }
  const FeatureConfig& config() const { return config_; }

  // out must have dim() slots. frame may be shorter than frame_len (tail).
  void frame_features(std::span<const float> frame, std::span<double> out) const;

 private:
  FeatureConfig config_;
};

struct ToyLearnerConfig {
  int n_classes = 4;
  FeatureConfig features;
  std::uint64_t seed = 0;
  double init_scale = 0.05;  // uniform init range for weights
};

// Linear softmax regression over frame features. Convex, fast, and
// deterministic, which is what policy-comparison experiments need; the
// pruning engine is the product, the learner is instrumentation.
class ToyFrameClassifier final : public Learner {
 public:
  explicit ToyFrameClassifier(ToyLearnerConfig config);

  std::vector<std::pair<std::string, double>> train_batch(
      std::span<const AudioInstance> batch, double step_size) override;
  double evaluate(std::span<const AudioInstance> instances) const override;
  std::pair<long long, long long> frame_errors(
      const AudioInstance& instance) const override;
  std::vector<double> parameters() const override;
  void set_parameters(std::span<const double> params) override;

  // Mean loss over the batch and its gradient wrt the parameters; the
  // finite-difference checks in the tests go through this.
  std::pair<double, std::vector<double>> batch_loss_and_gradient(
      std::span<const AudioInstance> batch) const;
  double batch_loss(std::span<const AudioInstance> batch) const;

  // Flat array of 64-bit floats after a one-line JSON header.
  void save_checkpoint(const std::filesystem::path& path, int epoch) const;
  static ToyFrameClassifier load_checkpoint(const std::filesystem::path& path);

  int n_classes() const { return config_.n_classes; }
  std::size_t feature_dim() const { return featurizer_.dim(); }
  std::size_t parameter_count() const { return weights_.size(); }
  const ToyLearnerConfig& config() const { return config_; }

 private:
  double instance_loss_and_gradient(const AudioInstance& instance,
                                    double grad_weight,
                                    std::vector<double>* grad) const;

  ToyLearnerConfig config_;
  FrameFeaturizer featurizer_;
  // Row-major (feature_dim + 1) columns per class; last column is the bias.
  std::vector<double> weights_;
};

}  // namespace dynaprune
