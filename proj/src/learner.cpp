// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#include "dynaprune/learner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "dynaprune/error.hpp"
#include "dynaprune/kernels.hpp"
#include "dynaprune/rng.hpp"

namespace dynaprune {
namespace {

constexpr double kAutocorrEps = 1e-12;

void softmax_inplace(std::vector<double>& logits) {
  const double m = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (double& v : logits) {
    v = std::exp(v - m);
    total += v;
  }
  for (double& v : logits) v /= total;
}

}  // namespace

FrameFeaturizer::FrameFeaturizer(FeatureConfig config) : config_(config) {
  if (config_.frame_len == 0) {
    throw ValidationError("featurizer: frame_len must be >= 1");
  }
  if (config_.autocorr_stride == 0) {
    throw ValidationError("featurizer: autocorr_stride must be >= 1");
  }
}

void FrameFeaturizer::frame_features(std::span<const float> frame,
                                     std::span<double> out) const {
  const std::size_t n = frame.size();
  if (n == 0) throw ArgumentError("frame_features: empty frame");
  if (out.size() != dim()) throw ArgumentError("frame_features: bad output size");
  const auto& k = kernels::active();
  const kernels::Moments m = k.moments(frame.data(), n);
  const double inv_n = 1.0 / static_cast<double>(n);
  const double mean = m.sum * inv_n;
  const double energy = m.sum_sq * inv_n;
  out[0] = mean;
  out[1] = energy;
  out[2] = n > 1 ? static_cast<double>(k.zero_crossings(frame.data(), n)) /
                       static_cast<double>(n - 1)
                 : 0.0;
  for (std::size_t i = 1; i <= config_.autocorr_lags; ++i) {
    const std::size_t lag = i * config_.autocorr_stride;
    double value = 0.0;
    if (n > lag) {
      const double r = k.dot(frame.data(), frame.data() + lag, n - lag) /
                       static_cast<double>(n - lag);
      value = r / (energy + kAutocorrEps);
    }
    out[2 + i] = value;
  }
}

ToyFrameClassifier::ToyFrameClassifier(ToyLearnerConfig config)
    : config_(config), featurizer_(config.features) {
  if (config_.n_classes < 2) {
    throw ValidationError("learner: n_classes must be >= 2");
  }
  const std::size_t count =
      (featurizer_.dim() + 1) * static_cast<std::size_t>(config_.n_classes);
  weights_.resize(count);
  Rng rng = Rng::derive(config_.seed, {Rng::hash_str("learner-init")});
  for (double& w : weights_) {
    w = rng.range(-config_.init_scale, config_.init_scale);
  }
}

double ToyFrameClassifier::instance_loss_and_gradient(
    const AudioInstance& instance, double grad_weight,
    std::vector<double>* grad) const {
  const std::size_t frame_len = featurizer_.config().frame_len;
  const std::size_t frames = frame_count(instance.samples.size(), frame_len);
  if (instance.labels.size() != frames) {
    throw ValidationError("learner: instance '" + instance.id +
                          "' labels do not match its frame count");
  }
  const std::size_t dim = featurizer_.dim();
  const std::size_t cols = dim + 1;
  const auto n_classes = static_cast<std::size_t>(config_.n_classes);
  std::vector<double> feats(dim);
  std::vector<double> logits(n_classes);
  const double frame_weight = grad_weight / static_cast<double>(frames);
  double loss = 0.0;
  for (std::size_t f = 0; f < frames; ++f) {
    const std::size_t begin = f * frame_len;
    const std::size_t end = std::min(begin + frame_len, instance.samples.size());
    featurizer_.frame_features(
        std::span<const float>(instance.samples.data() + begin, end - begin),
        feats);
    for (std::size_t c = 0; c < n_classes; ++c) {
      const double* row = weights_.data() + c * cols;
      double z = row[dim];  // bias
      for (std::size_t d = 0; d < dim; ++d) z += row[d] * feats[d];
      logits[c] = z;
    }
    softmax_inplace(logits);
    const int label = instance.labels[f];
    if (label < 0 || label >= config_.n_classes) {
      throw ValidationError("learner: label " + std::to_string(label) +
                            " outside [0, n_classes) in '" + instance.id + "'");
    }
    const double p = std::max(logits[static_cast<std::size_t>(label)],
                              std::numeric_limits<double>::min());
    loss -= std::log(p);
    if (grad != nullptr) {
      for (std::size_t c = 0; c < n_classes; ++c) {
        const double g =
            (logits[c] - (static_cast<int>(c) == label ? 1.0 : 0.0)) *
            frame_weight;
        double* grow = grad->data() + c * cols;
        for (std::size_t d = 0; d < dim; ++d) grow[d] += g * feats[d];
        grow[dim] += g;
      }
    }
  }
  return loss / static_cast<double>(frames);
}

std::pair<double, std::vector<double>> ToyFrameClassifier::batch_loss_and_gradient(
    std::span<const AudioInstance> batch) const {
  if (batch.empty()) throw ArgumentError("learner: empty batch");
  std::vector<double> grad(weights_.size(), 0.0);
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  double loss = 0.0;
  for (const AudioInstance& inst : batch) {
    loss += instance_loss_and_gradient(inst, inv_b, &grad) * inv_b;
  }
  return {loss, std::move(grad)};
}

double ToyFrameClassifier::batch_loss(std::span<const AudioInstance> batch) const {
  if (batch.empty()) throw ArgumentError("learner: empty batch");
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  double loss = 0.0;
  for (const AudioInstance& inst : batch) {
    loss += instance_loss_and_gradient(inst, 0.0, nullptr) * inv_b;
  }
  return loss;
}

std::vector<std::pair<std::string, double>> ToyFrameClassifier::train_batch(
    std::span<const AudioInstance> batch, double step_size) {
  if (batch.empty()) throw ArgumentError("learner: empty batch");
  std::vector<double> grad(weights_.size(), 0.0);
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  std::vector<std::pair<std::string, double>> losses;
  losses.reserve(batch.size());
  for (const AudioInstance& inst : batch) {
    const double loss = instance_loss_and_gradient(inst, inv_b, &grad);
    if (!std::isfinite(loss)) {
      throw TrainingError("non-finite loss on instance '" + inst.id + "'");
    }
    losses.emplace_back(inst.id, loss);
  }
  for (const double g : grad) {
    if (!std::isfinite(g)) throw TrainingError("non-finite gradient");
  }
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    weights_[i] -= step_size * grad[i];
  }
  return losses;
}

std::pair<long long, long long> ToyFrameClassifier::frame_errors(
    const AudioInstance& instance) const {
  const std::size_t frame_len = featurizer_.config().frame_len;
  const std::size_t frames = frame_count(instance.samples.size(), frame_len);
  if (instance.labels.size() != frames) {
    throw ValidationError("learner: instance '" + instance.id +
                          "' labels do not match its frame count");
  }
  const std::size_t dim = featurizer_.dim();
  const std::size_t cols = dim + 1;
  const auto n_classes = static_cast<std::size_t>(config_.n_classes);
  std::vector<double> feats(dim);
  long long wrong = 0;
  for (std::size_t f = 0; f < frames; ++f) {
    const std::size_t begin = f * frame_len;
    const std::size_t end = std::min(begin + frame_len, instance.samples.size());
    featurizer_.frame_features(
        std::span<const float>(instance.samples.data() + begin, end - begin),
        feats);
    std::size_t best = 0;
    double best_z = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < n_classes; ++c) {
      const double* row = weights_.data() + c * cols;
      double z = row[dim];
      for (std::size_t d = 0; d < dim; ++d) z += row[d] * feats[d];
      if (z > best_z) {  // ties keep the lower class index
        best_z = z;
        best = c;
      }
    }
    wrong += (static_cast<int>(best) != instance.labels[f]);
  }
  return {wrong, static_cast<long long>(frames)};
}

double ToyFrameClassifier::evaluate(
    std::span<const AudioInstance> instances) const {
  if (instances.empty()) throw ArgumentError("evaluate: empty instance set");
  long long wrong = 0;
  long long total = 0;
  for (const AudioInstance& inst : instances) {
    const auto [w, t] = frame_errors(inst);
    wrong += w;
    total += t;
  }
  return static_cast<double>(wrong) / static_cast<double>(total);
}

std::vector<double> ToyFrameClassifier::parameters() const { return weights_; }

void ToyFrameClassifier::set_parameters(std::span<const double> params) {
  if (params.size() != weights_.size()) {
    throw ArgumentError("set_parameters: expected " +
                        std::to_string(weights_.size()) + " values, got " +
                        std::to_string(params.size()));
  }
  std::copy(params.begin(), params.end(), weights_.begin());
}

void ToyFrameClassifier::save_checkpoint(const std::filesystem::path& path,
                                         int epoch) const {
  nlohmann::json header = {{"n_classes", config_.n_classes},
                           {"feature_dim", featurizer_.dim()},
                           {"frame_len", config_.features.frame_len},
                           {"autocorr_lags", config_.features.autocorr_lags},
                           {"seed", config_.seed},
                           {"epoch", epoch}};
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write checkpoint " + path.string());
  out << header.dump() << '\n';
  out.write(reinterpret_cast<const char*>(weights_.data()),
            static_cast<std::streamsize>(weights_.size() * sizeof(double)));
  if (!out) throw IoError("checkpoint write failed for " + path.string());
}

ToyFrameClassifier ToyFrameClassifier::load_checkpoint(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  std::string header_line;
  if (!std::getline(in, header_line)) {
    throw FormatError("checkpoint " + path.string() + ": missing header");
  }
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(header_line);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("checkpoint " + path.string() + ": bad header: " + e.what());
  }
  ToyLearnerConfig config;
  config.n_classes = header.at("n_classes").get<int>();
  config.features.frame_len = header.at("frame_len").get<std::size_t>();
  config.features.autocorr_lags = header.at("autocorr_lags").get<std::size_t>();
  config.seed = header.at("seed").get<std::uint64_t>();
  ToyFrameClassifier model(config);
  std::vector<double> params(model.parameter_count());
  in.read(reinterpret_cast<char*>(params.data()),
          static_cast<std::streamsize>(params.size() * sizeof(double)));
  if (in.gcount() !=
      static_cast<std::streamsize>(params.size() * sizeof(double))) {
    throw FormatError("checkpoint " + path.string() + ": truncated parameters");
  }
  model.set_parameters(params);
  return model;
}

}  // namespace dynaprune
