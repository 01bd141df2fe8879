/**
 * Copyright 2026 permlab authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "permlab/errors.hpp"
#include "permlab/scalar.hpp"

namespace permlab {

/// splitmix64 output mixer; also a decent tiny generator for seeding.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t z) {
    return splitmix64_next(z);
}

/// xoshiro256++ generator.  Each (seed, stream) pair is expanded through
/// splitmix64 into an independent state, so sample streams can be fanned out
/// across workers and still replay bit-for-bit from (seed, stream, index).
class Rng {
public:
    Rng() : Rng(0, 0) {}

    Rng(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t material = mix64(mix64(seed) ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
        for (auto& word : state_) word = splitmix64_next(material);
        draws_ = 0;
    }

    std::uint64_t next_u64() {
        ++draws_;
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in (0, 1]; never zero, safe under log().
    double uniform_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Unbiased uniform integer in [0, bound) via widening multiply with
    /// rejection (no modulo bias).
    std::uint32_t below(std::uint32_t bound) {
        std::uint64_t x = next_u64() >> 32;
        std::uint64_t m = x * bound;
        std::uint32_t l = static_cast<std::uint32_t>(m);
        if (l < bound) {
            std::uint32_t t = (0u - bound) % bound;
            while (l < t) {
                x = next_u64() >> 32;
                m = x * bound;
                l = static_cast<std::uint32_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

    /// Random sign, +1 or -1.
    double sign() { return (next_u64() >> 63) ? -1.0 : 1.0; }

    /// Standard normal via the polar Box-Muller form (hand-rolled so results
    /// do not depend on the standard library's distribution internals).
    double normal() {
        double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        double theta = 6.283185307179586476925286766559 * uniform();
        return r * std::cos(theta);
    }

    /// Circular complex Gaussian normalized to E[|z|^2] = 1 (each component
    /// has variance 1/2).  |z|^2 is exactly Exp(1), so E[|z|^(2k)] = k!.
    Scalar complex_gaussian() {
        double r = std::sqrt(-std::log(uniform_pos()));
        double theta = 6.283185307179586476925286766559 * uniform();
        return Scalar{r * std::cos(theta), r * std::sin(theta)};
    }

    /// Number of raw 64-bit draws consumed so far.
    std::uint64_t draw_count() const { return draws_; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
    std::uint64_t draws_ = 0;
};

/// Table of the p-th roots of unity, omega^k = exp(2*pi*i*k/p) for k in
/// [0, p).  Quarter-turn values are patched to exact +-1 / +-i so that p = 2
/// and p = 4 channels use exact signs.
inline std::vector<Scalar> roots_of_unity(int p) {
    if (p < 2) throw ParameterError("root order p must be >= 2, got " + std::to_string(p));
    std::vector<Scalar> w(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) {
        if (4 * k % p == 0) {
            switch (4 * k / p) {
                case 0: w[k] = Scalar{1.0, 0.0}; break;
                case 1: w[k] = Scalar{0.0, 1.0}; break;
                case 2: w[k] = Scalar{-1.0, 0.0}; break;
                default: w[k] = Scalar{0.0, -1.0}; break;
            }
        } else {
            double theta = 2.0 * 3.14159265358979323846264338327950288 * k / p;
            w[k] = Scalar{std::cos(theta), std::sin(theta)};
        }
    }
    return w;
}

}  // namespace permlab
