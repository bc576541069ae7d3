// Copyright 2026 dynaprune contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>
#include <string_view>

#include "dynaprune/error.hpp"

namespace dynaprune {

// Seeded random stream. Wraps std::mt19937_64 but draws every distribution
// through our own helpers: the std distribution classes are
// implementation-defined, and reproducibility of experiment outputs is part
// of the contract here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased integer in [0, n). Rejection sampling on the top range.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw ArgumentError("Rng::below: n must be positive");
    const std::uint64_t threshold = (-n) % n;  // 2^64 mod n
    std::uint64_t r = next_u64();
    while (r < threshold) r = next_u64();
    return r % n;
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Standard normal via Box-Muller. No pair caching, so the stream state is
  // a pure function of the number of calls made.
  double gaussian() {
    const double u1 = 1.0 - unit();  // (0, 1]
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  // splitmix64 finalizer; used to derive well-separated sub-seeds.
  static constexpr std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  static constexpr std::uint64_t hash_str(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a 64
    for (const char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  // Derives an independent stream from a base seed and a key path, e.g.
  // {hash_str("drop"), epoch, hash_str(id)}. Streams for distinct paths are
  // decoupled, which keeps per-instance results batch-order independent.
  static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = mix(seed);
    for (const std::uint64_t p : path) s = mix(s ^ p);
    return Rng(s);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dynaprune
