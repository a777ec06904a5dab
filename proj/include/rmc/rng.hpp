// Copyright 2026 rmc authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

#include "rmc/errors.hpp"

namespace rmc::rng {

// The generator below is part of the forwarded-sample wire contract: an
// independently written decoder must reproduce the exact same column draws
// from a transmitted seed. Every step (state update, mixer, bounded draw,
// partial shuffle) is therefore pinned in docs/formats.md and backed by
// golden vectors under tests/golden/. Do not change any of it without
// bumping the wire format version.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

/// SplitMix64 output mixer (Steele/Lea/Flood variant).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

/// Derives an independent child seed from a parent seed and a tag
/// (trial index, antenna row, pulse number, ...).
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) noexcept {
  return mix64(seed ^ mix64(tag + kGolden));
}

constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t a,
                               std::uint64_t b) noexcept {
  return derive(derive(seed, a), b);
}

/// Counter-based splittable generator. State advances by the golden-ratio
/// increment; each output is mix64 of the new state.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kGolden;
    return mix64(state_);
  }

  /// Uniform integer in [0, bound) via Lemire multiply-shift with rejection.
  /// bound must be >= 1.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    std::uint64_t x = next();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = next();
        m = static_cast<unsigned __int128>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return (next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform();
  }

  /// One Box-Muller pair of independent standard normals.
  /// Consumes exactly two raw draws.
  void gaussian_pair(double& z0, double& z1) noexcept {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    z0 = r * std::cos(phi);
    z1 = r * std::sin(phi);
  }

  /// Standard normal; consumes two raw draws (the sine half is discarded
  /// so the stream position does not depend on call history).
  double gaussian() noexcept {
    double z0 = 0.0;
    double z1 = 0.0;
    gaussian_pair(z0, z1);
    return z0;
  }

  /// Circularly-symmetric complex normal with unit variance, E|z|^2 = 1.
  std::complex<double> complex_gaussian() noexcept {
    double re = 0.0;
    double im = 0.0;
    gaussian_pair(re, im);
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
  }

 private:
  std::uint64_t state_;
};

/// Draws k distinct values from [0, n) by partial Fisher-Yates, returned
/// sorted ascending. Pinned by the wire contract.
inline std::vector<std::uint32_t> sample_without_replacement(
    std::uint64_t seed, std::uint32_t n, std::uint32_t k) {
  if (k > n) {
    throw DomainError("sample_without_replacement: k exceeds population");
  }
  SplitMix64 gen(seed);
  std::vector<std::uint32_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  for (std::uint32_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::uint32_t>(gen.next_below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace rmc::rng
