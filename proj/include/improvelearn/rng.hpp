/* Copyright 2026 The improvelearn Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstdint>
#include <random>

namespace improvelearn {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of the independent stream for (root_seed, stream_index):
///   splitmix64(splitmix64(root_seed) ^ splitmix64(stream_index + 1)).
/// Trial i of any experiment always uses stream i, so results do not depend
/// on scheduling or on the number of worker threads.
constexpr std::uint64_t derive_seed(std::uint64_t root_seed,
                                    std::uint64_t stream_index) {
  return splitmix64(splitmix64(root_seed) ^ splitmix64(stream_index + 1));
}

inline Rng make_stream(std::uint64_t root_seed, std::uint64_t stream_index) {
  return Rng(derive_seed(root_seed, stream_index));
}

/// Uniform double in [0, 1) built from the top 53 bits, independent of the
/// standard library's distribution implementations.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

/// Uniform integer in [0, n) by rejection, n > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

/// Standard normal variate (Marsaglia polar method).
double standard_normal(Rng& rng);

}  // namespace improvelearn
