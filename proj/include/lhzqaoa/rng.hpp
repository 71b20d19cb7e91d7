// Copyright 2026 The lhzqaoa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Reproducible random streams.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the
 * standard. The standard distributions are not, so the real and index
 * draws are done here by hand to keep results bit-identical across
 * standard libraries.
 */

#pragma once

#include <cstdint>
#include <random>

#include "errors.hpp"

namespace lhzqaoa {

/// Algorithm identifier recorded in every output provenance line.
inline constexpr const char *kRngAlgorithm = "mt19937_64";

/// SplitMix64 finalizer, used to derive independent stream seeds.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Folds a list of integers into one seed.
template <class... Ts>
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t base,
                                                  Ts... parts) noexcept {
    std::uint64_t s = mix64(base);
    ((s = mix64(s ^ static_cast<std::uint64_t>(parts))), ...);
    return s;
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    /// Uniform integer in [0, n), unbiased by rejection.
    std::uint64_t index(std::uint64_t n) {
        if (n == 0) {
            throw InvalidArgument("Rng::index: empty range");
        }
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = engine_();
        while (x >= limit) {
            x = engine_();
        }
        return x % n;
    }

    std::uint64_t next() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

} // namespace lhzqaoa
