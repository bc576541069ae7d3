// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

// AVX2 variants of the sample-array kernels. Compiled with -mavx2 -mfma and
// only dispatched to after a cpuid check. Keep this translation unit free of
// inline std:: helpers shared with other TUs.

#include <cstddef>
#include <cstdint>

#include <immintrin.h>

#include "dynaprune/kernels.hpp"

namespace dynaprune::kernels {
namespace {

double hsum_pd(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

Moments moments_avx2(const float* x, std::size_t n) {
  __m256d sum0 = _mm256_setzero_pd();
  __m256d sum1 = _mm256_setzero_pd();
  __m256d sq0 = _mm256_setzero_pd();
  __m256d sq1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 v = _mm256_loadu_ps(x + i);
    const __m256d lo = _mm256_cvtps_pd(_mm256_castps256_ps128(v));
    const __m256d hi = _mm256_cvtps_pd(_mm256_extractf128_ps(v, 1));
    sum0 = _mm256_add_pd(sum0, lo);
    sum1 = _mm256_add_pd(sum1, hi);
    sq0 = _mm256_fmadd_pd(lo, lo, sq0);
    sq1 = _mm256_fmadd_pd(hi, hi, sq1);
  }
  double sum = hsum_pd(_mm256_add_pd(sum0, sum1));
  double sum_sq = hsum_pd(_mm256_add_pd(sq0, sq1));
  for (; i < n; ++i) {
    const double v = static_cast<double>(x[i]);
    sum += v;
    sum_sq += v * v;
  }
  return {sum, sum_sq};
}

double dot_avx2(const float* a, const float* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 va = _mm256_loadu_ps(a + i);
    const __m256 vb = _mm256_loadu_ps(b + i);
    const __m256d alo = _mm256_cvtps_pd(_mm256_castps256_ps128(va));
    const __m256d ahi = _mm256_cvtps_pd(_mm256_extractf128_ps(va, 1));
    const __m256d blo = _mm256_cvtps_pd(_mm256_castps256_ps128(vb));
    const __m256d bhi = _mm256_cvtps_pd(_mm256_extractf128_ps(vb, 1));
    acc0 = _mm256_fmadd_pd(alo, blo, acc0);
    acc1 = _mm256_fmadd_pd(ahi, bhi, acc1);
  }
  double acc = hsum_pd(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return acc;
}

void affine_avx2(float* x, std::size_t n, float scale, float shift) {
  const __m256 vscale = _mm256_set1_ps(scale);
  const __m256 vshift = _mm256_set1_ps(shift);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 v = _mm256_loadu_ps(x + i);
    _mm256_storeu_ps(x + i, _mm256_fmadd_ps(v, vscale, vshift));
  }
  for (; i < n; ++i) {
    x[i] = x[i] * scale + shift;
  }
}

std::size_t zero_crossings_avx2(const float* x, std::size_t n) {
  if (n < 2) return 0;
  const __m256 zero = _mm256_setzero_ps();
  std::size_t count = 0;
  // prev holds the sign bit of the element just before the current block;
  // seeding it with x[0] makes the first in-block comparison a no-op.
  unsigned prev = x[0] < 0.0f ? 1u : 0u;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 v = _mm256_loadu_ps(x + i);
    const unsigned m = static_cast<unsigned>(
        _mm256_movemask_ps(_mm256_cmp_ps(v, zero, _CMP_LT_OQ)));
    const unsigned shifted = ((m << 1) | prev) & 0xFFu;
    count += static_cast<std::size_t>(_mm_popcnt_u32(m ^ shifted));
    prev = (m >> 7) & 1u;
  }
  bool prev_neg = prev != 0;
  for (std::size_t j = (i == 0 ? 1 : i); j < n; ++j) {
    const bool neg = x[j] < 0.0f;
    count += (neg != prev_neg);
    prev_neg = neg;
  }
  return count;
}

void resample_linear_avx2(const float* src, std::size_t n_src, float* dst,
                          std::size_t n_dst, double step) {
  if (n_dst == 0) return;
  if (n_src == 1) {
    for (std::size_t j = 0; j < n_dst; ++j) dst[j] = src[0];
    return;
  }
  const double last = static_cast<double>(n_src - 1);
  if (n_src > static_cast<std::size_t>(INT32_MAX)) {
    // Gather indices are 32-bit; fall back for absurdly long signals.
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
    return;
  }
  const __m256d vstep = _mm256_set1_pd(step);
  const __m256d vzero = _mm256_setzero_pd();
  const __m256d vlast = _mm256_set1_pd(last);
  const __m128i vmax_i = _mm_set1_epi32(static_cast<int>(n_src - 2));
  const __m128i vzero_i = _mm_setzero_si128();
  std::size_t j = 0;
  for (; j + 4 <= n_dst; j += 4) {
    const __m256d idx = _mm256_set_pd(
        static_cast<double>(j + 3), static_cast<double>(j + 2),
        static_cast<double>(j + 1), static_cast<double>(j));
    __m256d pos = _mm256_mul_pd(idx, vstep);
    pos = _mm256_max_pd(pos, vzero);
    pos = _mm256_min_pd(pos, vlast);
    __m128i i32 = _mm256_cvttpd_epi32(pos);
    i32 = _mm_min_epi32(i32, vmax_i);
    i32 = _mm_max_epi32(i32, vzero_i);
    const __m256d frac = _mm256_sub_pd(pos, _mm256_cvtepi32_pd(i32));
    const __m128 lo_f = _mm_i32gather_ps(src, i32, 4);
    const __m128 hi_f = _mm_i32gather_ps(src + 1, i32, 4);
    const __m256d lo = _mm256_cvtps_pd(lo_f);
    const __m256d hi = _mm256_cvtps_pd(hi_f);
    const __m256d out = _mm256_fmadd_pd(frac, _mm256_sub_pd(hi, lo), lo);
    _mm_storeu_ps(dst + j, _mm256_cvtpd_ps(out));
  }
  for (; j < n_dst; ++j) {
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

const KernelTable& avx2_table() {
  static const KernelTable table = {
      "avx2",        moments_avx2,        dot_avx2,
      affine_avx2,   zero_crossings_avx2, resample_linear_avx2,
  };
  return table;
}

}  // namespace dynaprune::kernels
