// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#include "dynaprune/signal_ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "dynaprune/error.hpp"
#include "dynaprune/kernels.hpp"

namespace dynaprune {

void z_normalize(std::span<float> samples) {
  const std::size_t n = samples.size();
  if (n < 2) throw ArgumentError("z_normalize: need at least 2 samples");
  const auto& k = kernels::active();
  const kernels::Moments m = k.moments(samples.data(), n);
  const double mean = m.sum / static_cast<double>(n);
  const double var = m.sum_sq / static_cast<double>(n) - mean * mean;
  if (var <= 1e-18) {
    std::fill(samples.begin(), samples.end(), 0.0f);
    return;
  }
  const double inv_std = 1.0 / std::sqrt(var);
  k.affine(samples.data(), n, static_cast<float>(inv_std),
           static_cast<float>(-mean * inv_std));
}

std::vector<float> resample_linear(std::span<const float> samples,
                                   int src_rate, int dst_rate) {
  if (src_rate <= 0) throw ArgumentError("resample_linear: src_rate must be positive");
  if (dst_rate <= 0) throw ArgumentError("resample_linear: dst_rate must be positive");
  if (samples.empty()) return {};
  const std::size_t n = samples.size();
  const std::size_t out_len = static_cast<std::size_t>(std::llround(
      static_cast<double>(n) * static_cast<double>(dst_rate) /
      static_cast<double>(src_rate)));
  std::vector<float> out(out_len);
  if (out_len == 0) return out;
  const double step =
      out_len > 1
          ? static_cast<double>(n - 1) / static_cast<double>(out_len - 1)
          : 0.0;
  kernels::active().resample_linear(samples.data(), n, out.data(), out_len,
                                    step);
  return out;
}

AudioInstance resample_instance(const AudioInstance& in, int dst_rate,
                                std::size_t frame_len) {
  std::vector<float> samples = resample_linear(in.samples, in.sample_rate, dst_rate);
  if (samples.empty()) throw ArgumentError("resample_instance: empty result");
  const std::size_t n_src = in.samples.size();
  const double step =
      samples.size() > 1 ? static_cast<double>(n_src - 1) /
                               static_cast<double>(samples.size() - 1)
                         : 0.0;
  std::vector<std::uint32_t> origin(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) {
    double pos = static_cast<double>(j) * step;
    pos = std::min(pos, static_cast<double>(n_src - 1));
    origin[j] = static_cast<std::uint32_t>(std::llround(pos));
  }
  std::vector<int> labels = relabel_from_origins(in.labels, frame_len, origin);
  return AudioInstance::make(in.id, std::move(samples), dst_rate,
                             std::move(labels), frame_len);
}

}  // namespace dynaprune
