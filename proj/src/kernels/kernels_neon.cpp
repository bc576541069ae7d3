// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

// NEON variants for aarch64, where NEON is baseline. Mirrors the AVX2 TU:
// float lanes widened to double accumulators, scalar remainders.

#include <cstddef>
#include <cstdint>

#include <arm_neon.h>

#include "dynaprune/kernels.hpp"

namespace dynaprune::kernels {
namespace {

double hsum_f64(float64x2_t v) { return vgetq_lane_f64(v, 0) + vgetq_lane_f64(v, 1); }

Moments moments_neon(const float* x, std::size_t n) {
  float64x2_t sum0 = vdupq_n_f64(0.0);
  float64x2_t sum1 = vdupq_n_f64(0.0);
  float64x2_t sq0 = vdupq_n_f64(0.0);
  float64x2_t sq1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float32x4_t v = vld1q_f32(x + i);
    const float64x2_t lo = vcvt_f64_f32(vget_low_f32(v));
    const float64x2_t hi = vcvt_f64_f32(vget_high_f32(v));
    sum0 = vaddq_f64(sum0, lo);
    sum1 = vaddq_f64(sum1, hi);
    sq0 = vfmaq_f64(sq0, lo, lo);
    sq1 = vfmaq_f64(sq1, hi, hi);
  }
  double sum = hsum_f64(vaddq_f64(sum0, sum1));
  double sum_sq = hsum_f64(vaddq_f64(sq0, sq1));
  for (; i < n; ++i) {
    const double v = static_cast<double>(x[i]);
    sum += v;
    sum_sq += v * v;
  }
  return {sum, sum_sq};
}

double dot_neon(const float* a, const float* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float32x4_t va = vld1q_f32(a + i);
    const float32x4_t vb = vld1q_f32(b + i);
    acc0 = vfmaq_f64(acc0, vcvt_f64_f32(vget_low_f32(va)),
                     vcvt_f64_f32(vget_low_f32(vb)));
    acc1 = vfmaq_f64(acc1, vcvt_f64_f32(vget_high_f32(va)),
                     vcvt_f64_f32(vget_high_f32(vb)));
  }
  double acc = hsum_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) {
    acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return acc;
}

void affine_neon(float* x, std::size_t n, float scale, float shift) {
  const float32x4_t vscale = vdupq_n_f32(scale);
  const float32x4_t vshift = vdupq_n_f32(shift);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float32x4_t v = vld1q_f32(x + i);
    vst1q_f32(x + i, vfmaq_f32(vshift, v, vscale));
  }
  for (; i < n; ++i) {
    x[i] = x[i] * scale + shift;
  }
}

std::size_t zero_crossings_neon(const float* x, std::size_t n) {
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

void resample_linear_neon(const float* src, std::size_t n_src, float* dst,
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

const KernelTable& neon_table() {
  static const KernelTable table = {
      "neon",        moments_neon,        dot_neon,
      affine_neon,   zero_crossings_neon, resample_linear_neon,
  };
  return table;
}

}  // namespace dynaprune::kernels
