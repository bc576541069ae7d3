// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#include "dynaprune/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

#include "dynaprune/error.hpp"

namespace dynaprune {
namespace {

constexpr std::uint64_t kSynthTag = Rng::hash_str("synth");
constexpr std::uint64_t kStrataTag = Rng::hash_str("strata");

}  // namespace

void SyntheticSpec::validate() const {
  if (n_classes < 2) throw ValidationError("synthetic: n_classes must be >= 2");
  if (strata.empty()) throw ValidationError("synthetic: at least one stratum");
  double total = 0.0;
  for (const Stratum& s : strata) {
    if (s.noise_sigma < 0.0) {
      throw ValidationError("synthetic: noise_sigma must be >= 0");
    }
    if (s.fraction < 0.0) {
      throw ValidationError("synthetic: stratum fraction must be >= 0");
    }
    total += s.fraction;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("synthetic: stratum fractions sum to " +
                          std::to_string(total) + ", expected 1");
  }
  if (duration_min_s <= 0.0 || duration_max_s < duration_min_s) {
    throw ValidationError("synthetic: bad duration range");
  }
  if (sample_rate <= 0) throw ValidationError("synthetic: bad sample_rate");
  if (frame_len == 0) throw ValidationError("synthetic: bad frame_len");
  if (amplitude <= 0.0) throw ValidationError("synthetic: bad amplitude");
  if (base_freq_hz * n_classes >= sample_rate / 2.0) {
    throw ValidationError("synthetic: class frequencies exceed Nyquist");
  }
}

std::vector<std::size_t> stratum_assignment(const SyntheticSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n_instances;
  // Largest-remainder apportionment, so counts match fractions exactly.
  std::vector<std::size_t> counts(spec.strata.size(), 0);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t s = 0; s < spec.strata.size(); ++s) {
    const double exact = spec.strata[s].fraction * static_cast<double>(n);
    counts[s] = static_cast<std::size_t>(exact);
    assigned += counts[s];
    remainders.emplace_back(exact - std::floor(exact), s);
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned) {
    counts[remainders[i % remainders.size()].second]++;
  }

  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::size_t s = 0; s < counts.size(); ++s) {
    out.insert(out.end(), counts[s], s);
  }
  // Deterministic shuffle decorrelates stratum from instance id.
  Rng rng = Rng::derive(spec.seed, {kStrataTag});
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(out[i - 1], out[j]);
  }
  return out;
}

std::vector<float> render_frames(const std::vector<int>& frame_labels,
                                 std::size_t frame_len, int sample_rate,
                                 double amplitude, double base_freq_hz,
                                 double noise_sigma, Rng& rng) {
  std::vector<float> samples(frame_labels.size() * frame_len);
  std::size_t t = 0;
  for (const int label : frame_labels) {
    const double freq = base_freq_hz * static_cast<double>(label + 1);
    const double omega =
        2.0 * std::numbers::pi * freq / static_cast<double>(sample_rate);
    for (std::size_t i = 0; i < frame_len; ++i, ++t) {
      double v = amplitude * std::sin(omega * static_cast<double>(i));
      if (noise_sigma > 0.0) v += noise_sigma * rng.gaussian();
      samples[t] = static_cast<float>(v);
    }
  }
  return samples;
}

std::vector<AudioInstance> generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  const std::vector<std::size_t> strata = stratum_assignment(spec);
  std::vector<AudioInstance> out;
  out.reserve(spec.n_instances);
  char id_buf[32];
  for (std::size_t i = 0; i < spec.n_instances; ++i) {
    Rng rng = Rng::derive(spec.seed, {kSynthTag, i});
    const double duration = rng.range(spec.duration_min_s, spec.duration_max_s);
    const double frames_exact = duration * static_cast<double>(spec.sample_rate) /
                                static_cast<double>(spec.frame_len);
    const std::size_t frames =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(frames_exact)));
    std::vector<int> labels(frames);
    for (int& label : labels) {
      label = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.n_classes)));
    }
    const double sigma = spec.strata[strata[i]].noise_sigma;
    std::vector<float> samples =
        render_frames(labels, spec.frame_len, spec.sample_rate, spec.amplitude,
                      spec.base_freq_hz, sigma, rng);
    std::snprintf(id_buf, sizeof(id_buf), "syn-%06zu", i);
    out.push_back(AudioInstance::make(id_buf, std::move(samples),
                                      spec.sample_rate, std::move(labels),
                                      spec.frame_len));
  }
  return out;
}

}  // namespace dynaprune
