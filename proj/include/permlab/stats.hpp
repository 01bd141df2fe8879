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
#include <vector>

#include "permlab/scalar.hpp"

namespace permlab {

/// Single-pass moment accumulator for complex sample streams.  Tracks the
/// complex mean, squared deviations of the real part, imaginary part and
/// modulus, plus third/fourth central moments of the real part for kurtosis
/// reporting.  Update and merge use the numerically stable incremental
/// formulas (no catastrophic cancellation on constant-plus-noise streams).
/// Single writer per accumulator; accumulators filled concurrently are
/// combined with merged().
class RunningMoments {
public:
    /// Add one sample; throws DomainError on non-finite input.
    void update(const Scalar& x);

    /// Combine two accumulators; equals accumulating the concatenation of
    /// their streams up to floating-point roundoff.
    static RunningMoments merged(const RunningMoments& a, const RunningMoments& b);

    std::uint64_t count() const { return n_; }
    Scalar mean() const { return Scalar{mean_re_, mean_im_}; }
    double mean_abs() const { return mean_abs_; }
    double max_abs() const { return max_abs_; }

    /// Unbiased (count - 1 divisor) variances; require count >= 2.
    double variance_re() const;
    double variance_im() const;
    double variance_abs() const;

    double std_error_re() const;
    double std_error_im() const;

    /// Excess kurtosis of the real part (0 when degenerate).
    double excess_kurtosis_re() const;

private:
    std::uint64_t n_ = 0;
    double mean_re_ = 0.0, m2_re_ = 0.0, m3_re_ = 0.0, m4_re_ = 0.0;
    double mean_im_ = 0.0, m2_im_ = 0.0;
    double mean_abs_ = 0.0, m2_abs_ = 0.0;
    double max_abs_ = 0.0;
};

/// Normal-approximation confidence interval on the real part of the mean.
struct IntervalEstimate {
    Scalar point{0.0, 0.0};     ///< complex sample mean
    double half_width = 0.0;    ///< z(confidence) * std-error of the real part
    double confidence = 0.95;
    std::uint64_t samples_used = 0;
    double imag_std_error = 0.0;  ///< reported alongside; the imaginary part
                                  ///< of `point` is its mean
};

/// Interval from an accumulator; requires count >= 2 (InsufficientDataError)
/// and confidence strictly inside (0, 1).
IntervalEstimate interval(const RunningMoments& m, double confidence);

/// Inverse standard normal CDF (Acklam's rational approximation plus one
/// Halley refinement); used for the z(confidence) factor.
double inverse_normal_cdf(double prob);

/// Anything that can produce the next sample of an i.i.d. stream.
struct SampleSource {
    virtual ~SampleSource() = default;
    virtual Scalar next() = 0;
};

/// Stop when the interval's relative half-width reaches epsilon, checked at
/// fixed checkpoints, or when max_samples is reached.  epsilon == 0 disables
/// the precision target (the run is then sample-bounded only).
struct StopRule {
    std::uint64_t max_samples = 0;
    double epsilon = 0.0;
    double confidence = 0.95;
};

struct RunOutcome {
    RunningMoments moments;
    IntervalEstimate estimate;
    bool target_met = false;
    /// Half-widths observed at each checkpoint (for shrink-rate diagnostics).
    std::vector<double> checkpoint_half_widths;
    std::vector<std::uint64_t> checkpoint_counts;
};

/// Samples checked every 4096 draws.  Deterministic given the source's seed
/// and the rule.
RunOutcome run_until(SampleSource& source, const StopRule& rule);

/// Checkpoint cadence of run_until; exposed for the parallel driver.
inline constexpr std::uint64_t kCheckpointInterval = 4096;

}  // namespace permlab
