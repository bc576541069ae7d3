// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#include <cstddef>

#include "dynaprune/kernels.hpp"

namespace dynaprune::kernels {
namespace {

Moments moments_scalar(const float* x, std::size_t n) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = static_cast<double>(x[i]);
    sum += v;
    sum_sq += v * v;
  }
  return {sum, sum_sq};
}

double dot_scalar(const float* a, const float* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return acc;
}

void affine_scalar(float* x, std::size_t n, float scale, float shift) {
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = x[i] * scale + shift;
  }
}

std::size_t zero_crossings_scalar(const float* x, std::size_t n) {
  if (n < 2) return 0;
  std::size_t count = 0;
  bool prev = x[0] < 0.0f;
  for (std::size_t i = 1; i < n; ++i) {
    const bool neg = x[i] < 0.0f;
    count += (neg != prev);
    prev = neg;
  }
  return count;
}

void resample_linear_scalar(const float* src, std::size_t n_src, float* dst,
                            std::size_t n_dst, double step) {
  if (n_dst == 0) return;
  if (n_src == 1) {
    for (std::size_t j = 0; j < n_dst; ++j) dst[j] = src[0];
    return;
  }
  const double last = static_cast<double>(n_src - 1);
  for (std::size_t j = 0; j < n_dst; ++j) {
    double pos = static_cast<double>(j) * step;
    if (pos < 0.0) pos = 0.0;
    if (pos > last) pos = last;
    std::size_t i = static_cast<std::size_t>(pos);
    if (i > n_src - 2) i = n_src - 2;
    const double frac = pos - static_cast<double>(i);
    const double lo = static_cast<double>(src[i]);
    const double hi = static_cast<double>(src[i + 1]);
    dst[j] = static_cast<float>(lo + frac * (hi - lo));
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table = {
      "scalar",        moments_scalar,        dot_scalar,
      affine_scalar,   zero_crossings_scalar, resample_linear_scalar,
  };
  return table;
}

}  // namespace dynaprune::kernels
