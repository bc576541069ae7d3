// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>

namespace dynaprune::kernels {

// Sample-array inner loops used by normalization, resampling and frame
// feature extraction. Scalar reference implementations are always built;
// AVX2 (x86-64) and NEON (aarch64) variants are compiled when the toolchain
// supports them and selected at runtime. All float reductions accumulate in
// double so variants agree to tight tolerances.

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
};

struct KernelTable {
  const char* name;

  // Sum and sum of squares of x[0..n).
  Moments (*moments)(const float* x, std::size_t n);

  // Dot product of a[0..n) and b[0..n).
  double (*dot)(const float* a, const float* b, std::size_t n);

  // In place x[i] = x[i] * scale + shift.
  void (*affine)(float* x, std::size_t n, float scale, float shift);

  // Number of sign changes between consecutive samples, where the sign
  // predicate is (x < 0).
  std::size_t (*zero_crossings)(const float* x, std::size_t n);

  // dst[j] = linear interpolation of src at position j * step, with the
  // position clamped to [0, n_src - 1]. Interpolation happens in double.
  void (*resample_linear)(const float* src, std::size_t n_src, float* dst,
                          std::size_t n_dst, double step);
};

// Scalar reference table. Always available; the oracle for equivalence tests.
const KernelTable& scalar_table();

// Best table for this machine. Honors the DYNAPRUNE_ISA environment variable
// ("scalar", "avx2", "neon", "auto"); falls back to scalar with a warning if
// a requested variant is unavailable. The choice is made once.
const KernelTable& active();

// Tables compiled into this binary, scalar first.
std::size_t available_tables(const KernelTable** out, std::size_t cap);

// True if the CPU supports the named variant and it was compiled in.
bool variant_supported(const std::string& name);

#if defined(DYNAPRUNE_BUILD_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(DYNAPRUNE_BUILD_NEON)
const KernelTable& neon_table();
#endif

}  // namespace dynaprune::kernels
