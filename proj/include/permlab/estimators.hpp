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

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "permlab/continuous.hpp"
#include "permlab/matrix.hpp"
#include "permlab/rng.hpp"
#include "permlab/scalar.hpp"
#include "permlab/scheme.hpp"
#include "permlab/stats.hpp"

namespace permlab {

/// Every unbiased single-sample permanent estimator offered by the library.
enum class EstimatorKind {
    kSignDeterminant,   ///< squared determinant of sqrt(A) with random signs
    kPhaseDeterminant,  ///< |det|^2 of sqrt(A) with random p-th roots of unity
    kCustomScheme,      ///< |det|^2 with per-entry channels from a scheme
    kPairing,           ///< product of phase-dressed row and column sums
    kGauge,             ///< per-column root-of-unity phases, no square roots
    kRecursiveSquare,   ///< squared permanent of a random-sign square root
    kLuGaussian,        ///< Gaussian integral through an LU factorization
    kSvdGaussian,       ///< Gaussian integral through an SVD, rank-economical
};

/// CLI tags: gg, kkll, custom, pairing, gauge, recursive, lu-mc, svd-mc.
std::string to_cli_name(EstimatorKind kind);
EstimatorKind estimator_from_cli_name(const std::string& name);

/// True for estimators whose randomness is a finite tuple of digits (and so
/// admit exact enumeration); false for the Gaussian-integral ones.
bool is_discrete(EstimatorKind kind);

/// Full description of one estimator instance.
struct EstimatorSpec {
    EstimatorKind kind = EstimatorKind::kSignDeterminant;
    int p = 2;                ///< root order for phase/pairing/gauge kinds
    DecouplingScheme scheme;  ///< used by kCustomScheme only
    int depth = 1;            ///< recursion depth for kRecursiveSquare (1..3)
};

/// One point of a discrete estimator's configuration space: one small
/// integer in [0, radix) per random digit, in matrix nonzero order (or
/// column order for the gauge estimator).  Empty for continuous estimators.
struct Configuration {
    std::vector<std::uint32_t> values;
    std::uint64_t config_space_size = 0;  ///< 0 marks a continuous estimator
};

struct EstimatorSample {
    Scalar value{0.0, 0.0};
    Configuration config;
};

/// Matrix-plus-spec preparation shared by all sampling workers: validated
/// preconditions, square roots, root-of-unity tables, factorizations.
/// Immutable after construction; per-worker scratch lives in Workspace.
class PreparedEstimator {
public:
    PreparedEstimator(const Matrix& a, EstimatorSpec spec);

    const Matrix& matrix() const { return a_; }
    const EstimatorSpec& spec() const { return spec_; }
    std::size_t size() const { return a_.rows(); }
    bool discrete() const { return is_discrete(spec_.kind); }

    /// Per-digit radices of the configuration space (discrete kinds).
    const std::vector<std::uint32_t>& radices() const { return radices_; }
    std::size_t digit_count() const { return radices_.size(); }

    /// Product of radices, saturating at 2^64-1; config_space_exact() tells
    /// whether the product overflowed.
    std::uint64_t config_space_size() const { return config_space_size_; }
    bool config_space_exact() const { return config_space_exact_; }

    /// Per-worker scratch buffers.
    struct Workspace {
        std::vector<Scalar> cells;
        std::vector<std::size_t> pivots;
        std::vector<Scalar> factors;
        std::vector<Scalar> phi;
        std::vector<std::uint32_t> digits;
    };
    Workspace make_workspace() const;

    /// Deterministic sample value at one configuration (discrete kinds with
    /// depth 1 only; ParameterError otherwise).  `digits` must hold
    /// digit_count() values, each below its radix.
    Scalar evaluate(const std::uint32_t* digits, Workspace& ws) const;

    /// Draw one sample (any kind).
    Scalar sample_value(Rng& rng, Workspace& ws) const;
    EstimatorSample sample(Rng& rng, Workspace& ws) const;

private:
    void prepare_discrete();
    Scalar determinant_sample(const std::uint32_t* digits, Workspace& ws) const;
    Scalar pairing_sample(const std::uint32_t* digits, Workspace& ws) const;
    Scalar gauge_sample(const std::uint32_t* digits, Workspace& ws) const;
    Scalar recursive_sample(const std::uint32_t* digits, Workspace& ws) const;

    Matrix a_;
    EstimatorSpec spec_;
    NonzeroPattern pattern_;
    std::vector<double> sqrt_values_;        ///< per nonzero, sqrt-based kinds
    std::vector<Scalar> entry_fixed_;        ///< per nonzero, deterministic part
    std::vector<int> entry_digit_;           ///< nonzero -> digit index or -1
    std::vector<std::uint32_t> radices_;
    /// multiplier_table_[digit] lists the random multiplier for each digit
    /// value (deterministic part folded in).
    std::vector<std::vector<Scalar>> multiplier_table_;
    std::vector<Scalar> gauge_roots_;  ///< p-th roots for the gauge prefactor
    std::uint64_t config_space_size_ = 0;
    bool config_space_exact_ = true;
    std::shared_ptr<const LuIntegrand> lu_;
    std::shared_ptr<const SvdIntegrand> svd_;
};

/// Reproducible sample stream: (seed, stream index, sample index) fully
/// determines every sample.  Distinct stream indices give independent
/// sequences suitable for parallel workers.
class EstimatorStream : public SampleSource {
public:
    EstimatorStream(std::shared_ptr<const PreparedEstimator> prepared,
                    std::uint64_t seed, std::uint64_t stream_index);

    Scalar next() override;
    EstimatorSample next_sample();

    std::uint64_t samples_drawn() const { return draws_; }
    std::uint64_t stream_index() const { return stream_index_; }

private:
    std::shared_ptr<const PreparedEstimator> prepared_;
    Rng rng_;
    PreparedEstimator::Workspace ws_;
    std::uint64_t stream_index_ = 0;
    std::uint64_t draws_ = 0;
};

/// Exact mean and second absolute moment of a discrete estimator over its
/// entire configuration space, by mixed-radix enumeration in nonzero order
/// (first digit fastest).  Guarded at 2^24 configurations.
struct EnumeratedMoments {
    Scalar mean{0.0, 0.0};
    double second_moment = 0.0;
    std::uint64_t config_space_size = 0;
    double variance() const;  ///< second_moment - |mean|^2, clamped at 0
};

EnumeratedMoments enumerate_expectation(const Matrix& a, const EstimatorSpec& spec);

/// Configuration-space enumeration guard.
inline constexpr std::uint64_t kEnumerationGuard = std::uint64_t{1} << 24;

/// Size guard for the exact permanent call inside the recursive estimator.
inline constexpr std::size_t kRecursiveSizeGuard = 20;
inline constexpr int kMaxRecursionDepth = 3;

}  // namespace permlab
