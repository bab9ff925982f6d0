// Copyright 2026 The shotplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace shotplan {

/// Seeded random source for all stochastic steps. Wraps std::mt19937_64 but
/// derives uniforms and signs from raw engine words, so the produced stream
/// depends only on the engine (whose output sequence the standard pins down),
/// not on library-specific distribution algorithms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Rademacher variate: -1 or +1 with equal probability.
    int rademacher() { return (engine_() >> 63) ? 1 : -1; }

  private:
    std::mt19937_64 engine_;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Splittable seed derivation: worker/trial index k under master seed s gets
/// splitmix64(s ^ (k+1)*golden_gamma). Index-based, so results do not depend
/// on scheduling order when trials run concurrently.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return detail::splitmix64(master ^ ((index + 1) * 0x9E3779B97F4A7C15ULL));
}

}  // namespace shotplan
