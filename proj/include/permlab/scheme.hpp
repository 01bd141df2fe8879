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

#include <cstddef>
#include <string>
#include <vector>

#include "permlab/matrix.hpp"
#include "permlab/scalar.hpp"

namespace permlab {

/// How one matrix entry is randomized inside a determinant-based estimator.
enum class ChannelKind {
    kSign,   ///< uniform +-1 multiplier
    kPhase,  ///< uniform p-th root-of-unity multiplier
    kFixed,  ///< no random factor (deterministic multiplier only)
};

/// Randomization channel for a single nonzero entry.  Every kind may carry a
/// deterministic unit-modulus multiplier on top of its random factor (for
/// kFixed the multiplier is the whole channel).
struct EntryChannel {
    std::size_t row = 0;
    std::size_t col = 0;
    ChannelKind kind = ChannelKind::kSign;
    int p = 2;               ///< root order, used by kPhase
    Scalar fixed{1.0, 0.0};  ///< deterministic unit-modulus multiplier
};

/// A per-entry assignment of randomization channels.  A scheme used by an
/// estimator must cover every nonzero of the matrix exactly once; validate()
/// enforces that.  Note that entries whose channel is kFixed contribute no
/// randomness, and a scheme relying on them is unbiased only when the fixed
/// multipliers conspire as in the zero-variance constructions; sign/phase
/// channels (with or without extra fixed multipliers) are always unbiased.
class DecouplingScheme {
public:
    DecouplingScheme() = default;
    explicit DecouplingScheme(std::vector<EntryChannel> channels);

    const std::vector<EntryChannel>& channels() const { return channels_; }

    /// Check the scheme against a matrix's nonzero pattern: exactly one
    /// channel per nonzero entry (no omissions, no duplicates, nothing
    /// naming a zero or out-of-range cell), phase orders >= 2, multipliers
    /// unit-modulus.  Throws ConfigError.
    void validate(const NonzeroPattern& pattern) const;

    /// Channel for a given entry; throws ConfigError when the entry is not
    /// listed.
    const EntryChannel& channel_for(std::size_t row, std::size_t col) const;

    /// Uniform schemes covering a whole pattern (used for degeneracy checks:
    /// an all-sign scheme reproduces the plain sign estimator, an
    /// all-phase(p) scheme the root-of-unity determinant estimator).
    static DecouplingScheme uniform_sign(const NonzeroPattern& pattern);
    static DecouplingScheme uniform_phase(const NonzeroPattern& pattern, int p);

    /// Serialize to / parse from a JSON array of
    ///   {"row": r, "col": c, "channel": "sign"|"phase"|"fixed",
    ///    "p": order, "fixed": {"re": x, "im": y}}
    /// where "p" is required for phase channels and "fixed" is required for
    /// fixed channels and optional otherwise (default 1).
    std::string to_json() const;
    static DecouplingScheme from_json(const std::string& text);

private:
    std::vector<EntryChannel> channels_;
};

/// Load a scheme from a file path ("-" reads standard input).
DecouplingScheme load_scheme_file(const std::string& path);

}  // namespace permlab
