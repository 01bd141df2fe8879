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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permlab/estimators.hpp"
#include "permlab/exact.hpp"
#include "permlab/matrix.hpp"
#include "permlab/scalar.hpp"
#include "permlab/stats.hpp"
#include "permlab/verify.hpp"

namespace permlab {

/// Fixed default seed so published runs reproduce; entropy is opt-in.
inline constexpr std::uint64_t kDefaultSeed = 123456789;

/// Optional parameters echoed back in a run report.
struct ReportParameters {
    std::optional<int> p;
    std::optional<std::string> scheme;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint32_t> streams;
    std::optional<double> epsilon;
    std::optional<double> confidence;
    std::optional<int> depth;
    std::optional<int> threads;
};

struct EnumeratedReport {
    Scalar mean{0.0, 0.0};
    double second_moment = 0.0;
    double variance = 0.0;
    std::uint64_t config_space_size = 0;
};

struct CompareReport {
    std::string first_algorithm;
    std::string second_algorithm;
    EnumeratedReport first;
    EnumeratedReport second;
    /// second.second_moment / first.second_moment.
    double second_moment_ratio = 0.0;
};

struct BenchRow {
    std::string algorithm;
    std::uint64_t n = 0;
    double median_ms = 0.0;
    double terms_per_second = 0.0;
};

/// Machine-readable result of one CLI invocation.  Optional fields are
/// emitted only when meaningful for the command; every numeric field present
/// must be finite.
struct RunReport {
    int schema = 1;
    std::string command;
    std::string algorithm;
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    ReportParameters parameters;
    std::optional<Scalar> result;
    std::optional<double> std_error;
    std::optional<std::array<double, 2>> interval;
    std::optional<std::uint64_t> samples;
    std::optional<std::uint64_t> terms;
    double elapsed_ms = 0.0;
    std::vector<std::string> warnings;
    std::optional<EnumeratedReport> enumerated;
    std::optional<CompareReport> compare;
    std::vector<CheckResult> checks;     ///< verify command
    std::vector<BenchRow> bench;         ///< bench command

    /// Serialize to pretty-printed JSON with snake_case keys; throws
    /// DomainError when a numeric field is non-finite.
    std::string to_json() const;
    static RunReport from_json(const std::string& text);

    /// Human-oriented rendering of the same content.
    std::string to_text() const;
};

/// Exact permanent computation (one of the exact algorithms).
struct ExactRunOptions {
    ExactAlgorithm algorithm = ExactAlgorithm::glynn;
    int p = 2;            ///< root order for the gauge-zp algorithm
    int threads = 0;      ///< <= 0: one worker per hardware thread
    bool override_size_guard = false;
};
RunReport run_exact(const Matrix& a, const ExactRunOptions& options);

/// Monte Carlo estimation with deterministic multi-stream scheduling: each
/// stream owns a fixed share of the sample budget, rounds of at most 4096
/// samples per stream are drawn in stream order, and accumulators are merged
/// in stream order at every checkpoint, so results are byte-identical for a
/// given (seed, streams) regardless of timing.
struct EstimateRunOptions {
    EstimatorSpec spec;
    std::string scheme_path;  ///< echoed in the report when nonempty
    std::uint64_t seed = kDefaultSeed;
    std::uint32_t streams = 0;  ///< 0: one stream per hardware thread
    std::uint64_t max_samples = 100000;
    double epsilon = 0.0;       ///< 0 disables the precision target
    double confidence = 0.95;
};
RunReport run_estimate(const Matrix& a, const EstimateRunOptions& options);

/// Exact enumeration of a discrete estimator's mean/variance.
RunReport run_variance(const Matrix& a, const EstimatorSpec& spec);
/// Paired enumeration emitting the second-moment ratio (second / first).
RunReport run_variance_compare(const Matrix& a, const EstimatorSpec& first,
                               const EstimatorSpec& second);

/// Identity verification suite.
RunReport run_verify(const VerifyOptions& options);

/// Wall-clock benchmark over seeded random 0-1 matrices.
struct BenchRunOptions {
    std::vector<ExactAlgorithm> algorithms;
    std::uint64_t n_low = 10;
    std::uint64_t n_high = 14;
    int reps = 3;
    std::uint64_t seed = kDefaultSeed;
    int p = 2;        ///< root order when benchmarking gauge-zp
    int threads = 0;
    bool override_size_guard = false;
};
RunReport run_bench(const BenchRunOptions& options);

}  // namespace permlab
