// Copyright 2026 The qnet Authors
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

#ifndef QNET_RNG_HPP_
#define QNET_RNG_HPP_

#include <cmath>
#include <cstdint>

namespace qnet {

// SplitMix64 (Vigna). Used both as the stream generator and as the mixing
// function for seed derivation. std::uniform_* wrappers are deliberately
// avoided: their output is implementation-defined, and identical seeds must
// reproduce identical artifacts bit for bit.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 random bits.
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Unbiased integer in [0, bound) via rejection. bound > 0.
  uint64_t below(uint64_t bound) {
    const uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  uint64_t state_;
};

// Finalizer-only mix: maps any 64-bit value to a well-scrambled one.
inline uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent stream seed from (master, a, b). Used to give every
// (grid point, run) pair its own generator so results do not depend on thread
// scheduling or evaluation order.
inline uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b) {
  uint64_t s = mix64(master + 0x9e3779b97f4a7c15ULL);
  s = mix64(s ^ (a + 0xbf58476d1ce4e5b9ULL));
  s = mix64(s ^ (b + 0x94d049bb133111ebULL));
  return s;
}

// Exponential with the given mean. 1 - u01() lies in (0, 1], so log() never
// sees zero.
inline double sample_exponential(SplitMix64& rng, double mean) {
  return -mean * std::log(1.0 - rng.u01());
}

// Uniform on [0, 2 * mean).
inline double sample_uniform_mean(SplitMix64& rng, double mean) {
  return 2.0 * mean * rng.u01();
}

// Poisson via Knuth's product method; means above 700 are halved recursively
// so exp(-mean) stays representable. Draw count is O(mean), which is accepted:
// sampling happens once per assignment, not inside Monte Carlo loops.
inline uint64_t sample_poisson(SplitMix64& rng, double mean) {
  if (mean > 700.0) {
    const double half = mean / 2.0;
    return sample_poisson(rng, half) + sample_poisson(rng, mean - half);
  }
  const double limit = std::exp(-mean);
  uint64_t k = 0;
  double prod = 1.0;
  do {
    ++k;
    prod *= rng.u01();
  } while (prod > limit);
  return k - 1;
}

// Standard normal via Box-Muller (one value per pair of uniforms; the sine
// partner is discarded to keep the draw pattern simple and reproducible).
inline double sample_standard_normal(SplitMix64& rng) {
  const double u1 = 1.0 - rng.u01();  // (0, 1], log() safe
  const double u2 = rng.u01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

// Gaussian truncated to [0, inf): negative draws are rejected and resampled,
// matching the renormalized-tail survival function used by the analytics.
inline double sample_truncated_gaussian(SplitMix64& rng, double mean, double stddev) {
  for (;;) {
    const double v = mean + stddev * sample_standard_normal(rng);
    if (v >= 0.0) return v;
  }
}

}  // namespace qnet

#endif  // QNET_RNG_HPP_
