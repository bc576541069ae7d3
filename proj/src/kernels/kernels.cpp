// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#include "dynaprune/kernels.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

namespace dynaprune::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(DYNAPRUNE_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* lookup(const std::string& name) {
  if (name == "scalar") return &scalar_table();
#if defined(DYNAPRUNE_BUILD_AVX2)
  if (name == "avx2" && cpu_has_avx2()) return &avx2_table();
#endif
#if defined(DYNAPRUNE_BUILD_NEON)
  if (name == "neon") return &neon_table();
#endif
  return nullptr;
}

const KernelTable* pick_best() {
#if defined(DYNAPRUNE_BUILD_AVX2)
  if (cpu_has_avx2()) return &avx2_table();
#endif
#if defined(DYNAPRUNE_BUILD_NEON)
  return &neon_table();
#endif
  return &scalar_table();
}

const KernelTable* select_once() {
  const char* env = std::getenv("DYNAPRUNE_ISA");
  if (env == nullptr || std::string(env).empty() || std::string(env) == "auto") {
    return pick_best();
  }
  if (const KernelTable* t = lookup(env)) return t;
  std::fprintf(stderr,
               "dynaprune: DYNAPRUNE_ISA=%s not available on this machine, "
               "using scalar kernels\n",
               env);
  return &scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable* chosen = select_once();
  return *chosen;
}

std::size_t available_tables(const KernelTable** out, std::size_t cap) {
  std::size_t n = 0;
  if (n < cap) out[n++] = &scalar_table();
#if defined(DYNAPRUNE_BUILD_AVX2)
  if (cpu_has_avx2() && n < cap) out[n++] = &avx2_table();
#endif
#if defined(DYNAPRUNE_BUILD_NEON)
  if (n < cap) out[n++] = &neon_table();
#endif
  return n;
}

bool variant_supported(const std::string& name) {
  return lookup(name) != nullptr;
}

}  // namespace dynaprune::kernels
