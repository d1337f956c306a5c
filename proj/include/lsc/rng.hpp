/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * This file is part of lsc, a power-trace leakage evaluation toolkit.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace lsc {

/// Deterministic random source used everywhere randomness is needed.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// C++ standard. The standard *distributions* are not: their algorithms
/// are implementation-defined, so this class derives bytes, uniforms and
/// normals from raw engine words itself. Identical seeds therefore
/// reproduce identical campaigns across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform byte; low 8 bits of one engine word.
    std::uint8_t next_byte() { return static_cast<std::uint8_t>(engine_() & 0xFF); }

    /// Uniform double in [0, 1) with 53 bits of precision.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). n must be positive. Uses plain modulo
    /// reduction; the sub-ppb bias is irrelevant for shuffles and
    /// bootstrap draws, and the mapping is fixed.
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(engine_() % static_cast<std::uint64_t>(n));
    }

    /// Standard normal via the Box-Muller transform. Consumes exactly two
    /// engine words per call; the sine branch is discarded so the stream
    /// position never depends on caller history.
    double normal() {
        // u1 in (0, 1] so the log is finite.
        const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double normal(double mean, double sigma) { return mean + sigma * normal(); }

    /// Fisher-Yates shuffle with the fixed uniform_index mapping.
    template <typename T> void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_index(i)]);
        }
    }

  private:
    std::mt19937_64 engine_;
};

/// Derives an independent stream seed from (base, index), so per-trace or
/// per-tree generators can be spawned without correlating streams.
/// SplitMix64 finalizer over the combined value.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace lsc
