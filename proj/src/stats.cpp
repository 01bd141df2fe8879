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

#include "permlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "permlab/errors.hpp"

namespace permlab {

void RunningMoments::update(const Scalar& x) {
    if (!is_finite(x)) {
        throw DomainError("non-finite sample fed to moment accumulator");
    }
    const double re = x.real();
    const double im = x.imag();
    const double ab = std::abs(x);

    const std::uint64_t n1 = n_;
    n_ += 1;
    const double n = static_cast<double>(n_);

    // Real part: full third/fourth central moments.
    {
        const double delta = re - mean_re_;
        const double delta_n = delta / n;
        const double delta_n2 = delta_n * delta_n;
        const double term1 = delta * delta_n * static_cast<double>(n1);
        m4_re_ += term1 * delta_n2 * (n * n - 3.0 * n + 3.0)
                + 6.0 * delta_n2 * m2_re_ - 4.0 * delta_n * m3_re_;
        m3_re_ += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2_re_;
        m2_re_ += term1;
        mean_re_ += delta_n;
    }
    // Imaginary part and modulus: mean + second moment only.
    {
        const double delta = im - mean_im_;
        const double delta_n = delta / n;
        m2_im_ += delta * delta_n * static_cast<double>(n1);
        mean_im_ += delta_n;
    }
    {
        const double delta = ab - mean_abs_;
        const double delta_n = delta / n;
        m2_abs_ += delta * delta_n * static_cast<double>(n1);
        mean_abs_ += delta_n;
    }
    max_abs_ = std::max(max_abs_, ab);
}

RunningMoments RunningMoments::merged(const RunningMoments& a, const RunningMoments& b) {
    if (a.n_ == 0) return b;
    if (b.n_ == 0) return a;

    RunningMoments out;
    const double na = static_cast<double>(a.n_);
    const double nb = static_cast<double>(b.n_);
    const double n = na + nb;
    out.n_ = a.n_ + b.n_;

    // Real part with third/fourth moments (pairwise combination formulas).
    {
        const double delta = b.mean_re_ - a.mean_re_;
        const double delta2 = delta * delta;
        const double delta3 = delta2 * delta;
        const double delta4 = delta2 * delta2;

        out.mean_re_ = a.mean_re_ + delta * nb / n;
        out.m2_re_ = a.m2_re_ + b.m2_re_ + delta2 * na * nb / n;
        out.m3_re_ = a.m3_re_ + b.m3_re_
                   + delta3 * na * nb * (na - nb) / (n * n)
                   + 3.0 * delta * (na * b.m2_re_ - nb * a.m2_re_) / n;
        out.m4_re_ = a.m4_re_ + b.m4_re_
                   + delta4 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n)
                   + 6.0 * delta2 * (na * na * b.m2_re_ + nb * nb * a.m2_re_) / (n * n)
                   + 4.0 * delta * (na * b.m3_re_ - nb * a.m3_re_) / n;
    }
    {
        const double delta = b.mean_im_ - a.mean_im_;
        out.mean_im_ = a.mean_im_ + delta * nb / n;
        out.m2_im_ = a.m2_im_ + b.m2_im_ + delta * delta * na * nb / n;
    }
    {
        const double delta = b.mean_abs_ - a.mean_abs_;
        out.mean_abs_ = a.mean_abs_ + delta * nb / n;
        out.m2_abs_ = a.m2_abs_ + b.m2_abs_ + delta * delta * na * nb / n;
    }
    out.max_abs_ = std::max(a.max_abs_, b.max_abs_);
    return out;
}

namespace {

double require_two(const RunningMoments& m) {
    if (m.count() < 2) {
        throw InsufficientDataError("need at least two samples for a variance");
    }
    return static_cast<double>(m.count() - 1);
}

}  // namespace

double RunningMoments::variance_re() const { return m2_re_ / require_two(*this); }
double RunningMoments::variance_im() const { return m2_im_ / require_two(*this); }
double RunningMoments::variance_abs() const { return m2_abs_ / require_two(*this); }

double RunningMoments::std_error_re() const {
    return std::sqrt(variance_re() / static_cast<double>(n_));
}

double RunningMoments::std_error_im() const {
    return std::sqrt(variance_im() / static_cast<double>(n_));
}

double RunningMoments::excess_kurtosis_re() const {
    require_two(*this);
    if (m2_re_ <= 0.0) return 0.0;
    const double n = static_cast<double>(n_);
    return n * m4_re_ / (m2_re_ * m2_re_) - 3.0;
}

double inverse_normal_cdf(double prob) {
    if (!(prob > 0.0 && prob < 1.0)) {
        throw ParameterError("inverse normal CDF needs probability strictly inside (0, 1)");
    }
    // Acklam's rational approximation (peak absolute error ~1.15e-9).
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double kLow = 0.02425;

    double x = 0.0;
    if (prob < kLow) {
        const double q = std::sqrt(-2.0 * std::log(prob));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5])
          / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (prob <= 1.0 - kLow) {
        const double q = prob - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q
          / (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - prob));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5])
          / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Halley step against the accurate erfc-based CDF.
    const double inv_sqrt2 = 0.7071067811865475244;
    const double e = 0.5 * std::erfc(-x * inv_sqrt2) - prob;
    const double u = e * std::sqrt(2.0 * 3.141592653589793238) * std::exp(0.5 * x * x);
    x = x - u / (1.0 + 0.5 * x * u);
    return x;
}

IntervalEstimate interval(const RunningMoments& m, double confidence) {
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw ParameterError("confidence level must lie strictly inside (0, 1)");
    }
    if (m.count() < 2) {
        throw InsufficientDataError("need at least two samples for an interval");
    }
    const double z = inverse_normal_cdf(0.5 + 0.5 * confidence);
    IntervalEstimate out;
    out.point = m.mean();
    out.half_width = z * m.std_error_re();
    out.confidence = confidence;
    out.samples_used = m.count();
    out.imag_std_error = m.std_error_im();
    return out;
}

RunOutcome run_until(SampleSource& source, const StopRule& rule) {
    if (rule.max_samples == 0) {
        throw ParameterError("stop rule needs a positive sample budget");
    }
    if (rule.epsilon < 0.0) {
        throw ParameterError("relative precision target must be nonnegative");
    }
    RunOutcome out;
    RunningMoments& m = out.moments;
    std::uint64_t next_check = std::min<std::uint64_t>(kCheckpointInterval, rule.max_samples);
    while (m.count() < rule.max_samples) {
        m.update(source.next());
        if (m.count() == next_check) {
            const IntervalEstimate est = interval(m, rule.confidence);
            out.checkpoint_half_widths.push_back(est.half_width);
            out.checkpoint_counts.push_back(est.samples_used);
            if (rule.epsilon > 0.0 &&
                est.half_width <= rule.epsilon * std::abs(est.point.real())) {
                out.estimate = est;
                out.target_met = true;
                return out;
            }
            next_check = std::min<std::uint64_t>(next_check + kCheckpointInterval,
                                                 rule.max_samples);
        }
    }
    out.estimate = interval(m, rule.confidence);
    out.target_met = rule.epsilon > 0.0 &&
                     out.estimate.half_width <=
                         rule.epsilon * std::abs(out.estimate.point.real());
    return out;
}

}  // namespace permlab
