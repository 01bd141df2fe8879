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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "permlab/errors.hpp"
#include "permlab/rng.hpp"
#include "permlab/stats.hpp"

using namespace permlab;

namespace {

/// Direct two-pass moments for cross-checking the streaming update.
struct DirectMoments {
    double mean = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
};

DirectMoments direct_moments(const std::vector<double>& xs) {
    DirectMoments d;
    for (double x : xs) d.mean += x;
    d.mean /= static_cast<double>(xs.size());
    for (double x : xs) {
        const double c = x - d.mean;
        d.m2 += c * c;
        d.m3 += c * c * c;
        d.m4 += c * c * c * c;
    }
    return d;
}

struct VectorSource : SampleSource {
    explicit VectorSource(std::vector<Scalar> xs) : xs_(std::move(xs)) {}
    Scalar next() override { return xs_[at_++ % xs_.size()]; }
    std::vector<Scalar> xs_;
    std::size_t at_ = 0;
};

}  // namespace

TEST_CASE("streaming moments match direct two-pass computation") {
    Rng rng(0x57a75, 0);
    std::vector<double> xs;
    RunningMoments m;
    for (int i = 0; i < 5000; ++i) {
        const double x = 3.0 + rng.normal() * 0.7 + rng.uniform();
        xs.push_back(x);
        m.update(Scalar{x, -x});
    }
    const DirectMoments d = direct_moments(xs);
    const double n = 5000.0;
    CHECK(m.count() == 5000);
    CHECK(m.mean().real() == doctest::Approx(d.mean).epsilon(1e-12));
    CHECK(m.mean().imag() == doctest::Approx(-d.mean).epsilon(1e-12));
    CHECK(m.variance_re() == doctest::Approx(d.m2 / (n - 1)).epsilon(1e-10));
    CHECK(m.variance_im() == doctest::Approx(d.m2 / (n - 1)).epsilon(1e-10));
    // Excess kurtosis from the raw central sums.
    const double kurt = n * d.m4 / (d.m2 * d.m2) - 3.0;
    CHECK(m.excess_kurtosis_re() == doctest::Approx(kurt).epsilon(1e-8));
    CHECK(m.std_error_re() ==
          doctest::Approx(std::sqrt(d.m2 / (n - 1) / n)).epsilon(1e-10));
}

TEST_CASE("merge equals one-stream accumulation at every split point") {
    Rng rng(0x57a75, 1);
    std::vector<Scalar> xs;
    for (int i = 0; i < 300; ++i) {
        xs.push_back(Scalar{rng.normal(), 0.25 * rng.normal()});
    }
    RunningMoments whole;
    for (const Scalar& x : xs) whole.update(x);

    for (std::size_t split : {std::size_t{0}, std::size_t{1}, std::size_t{150},
                              std::size_t{299}, std::size_t{300}}) {
        RunningMoments left, right;
        for (std::size_t i = 0; i < split; ++i) left.update(xs[i]);
        for (std::size_t i = split; i < xs.size(); ++i) right.update(xs[i]);
        const RunningMoments merged = RunningMoments::merged(left, right);
        CHECK(merged.count() == whole.count());
        CHECK(std::abs(merged.mean() - whole.mean()) < 1e-12);
        CHECK(merged.variance_re() ==
              doctest::Approx(whole.variance_re()).epsilon(1e-10));
        CHECK(merged.variance_im() ==
              doctest::Approx(whole.variance_im()).epsilon(1e-10));
        CHECK(merged.variance_abs() ==
              doctest::Approx(whole.variance_abs()).epsilon(1e-10));
        CHECK(merged.excess_kurtosis_re() ==
              doctest::Approx(whole.excess_kurtosis_re()).epsilon(1e-8));
        CHECK(merged.max_abs() == whole.max_abs());
    }
}

TEST_CASE("too few samples raise InsufficientDataError") {
    RunningMoments m;
    CHECK_THROWS_AS(m.variance_re(), InsufficientDataError);
    m.update(Scalar{1.0, 0.0});
    CHECK_THROWS_AS(m.variance_re(), InsufficientDataError);
    CHECK_THROWS_AS(interval(m, 0.95), InsufficientDataError);
    m.update(Scalar{2.0, 0.0});
    CHECK(m.variance_re() == doctest::Approx(0.5));
}

TEST_CASE("non-finite samples are rejected") {
    RunningMoments m;
    CHECK_THROWS_AS(
        m.update(Scalar{std::numeric_limits<double>::quiet_NaN(), 0.0}),
        DomainError);
}

TEST_CASE("inverse normal cdf hits textbook quantiles") {
    CHECK(inverse_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(inverse_normal_cdf(0.975) == doctest::Approx(1.9599639845400545).epsilon(1e-10));
    CHECK(inverse_normal_cdf(0.995) == doctest::Approx(2.5758293035489004).epsilon(1e-10));
    CHECK(inverse_normal_cdf(0.841344746068543) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(inverse_normal_cdf(0.025) == doctest::Approx(-1.9599639845400545).epsilon(1e-10));
    // Round trip through the standard library's erfc-based CDF.
    for (double z : {-3.0, -1.2, -0.3, 0.0, 0.7, 2.1, 3.5}) {
        const double prob = 0.5 * std::erfc(-z / std::sqrt(2.0));
        CHECK(inverse_normal_cdf(prob) == doctest::Approx(z).epsilon(1e-9));
    }
    CHECK_THROWS_AS(inverse_normal_cdf(0.0), ParameterError);
    CHECK_THROWS_AS(inverse_normal_cdf(1.0), ParameterError);
    CHECK_THROWS_AS(inverse_normal_cdf(-0.5), ParameterError);
}

TEST_CASE("interval widths scale with the z factor") {
    RunningMoments m;
    Rng rng(0x57a75, 2);
    for (int i = 0; i < 4096; ++i) m.update(Scalar{rng.normal(), 0.0});
    const IntervalEstimate i90 = interval(m, 0.90);
    const IntervalEstimate i99 = interval(m, 0.99);
    CHECK(i90.confidence == 0.90);
    CHECK(i99.half_width > i90.half_width);
    CHECK(i99.half_width / i90.half_width ==
          doctest::Approx(inverse_normal_cdf(0.995) / inverse_normal_cdf(0.95))
              .epsilon(1e-12));
    CHECK(i90.samples_used == 4096);
    CHECK_THROWS_AS(interval(m, 0.0), ParameterError);
    CHECK_THROWS_AS(interval(m, 1.0), ParameterError);
}

TEST_CASE("run_until stops at the sample cap") {
    Rng rng(0x57a75, 3);
    std::vector<Scalar> xs;
    for (int i = 0; i < 256; ++i) xs.push_back(Scalar{rng.normal(), 0.0});
    VectorSource source(std::move(xs));
    StopRule rule;
    rule.max_samples = 10000;  // epsilon 0: never precision-stopped
    const RunOutcome out = run_until(source, rule);
    CHECK(out.moments.count() == 10000);
    CHECK_FALSE(out.target_met);
    // Checkpoints land on the 4096-sample grid, plus the final partial block.
    REQUIRE(out.checkpoint_counts.size() == 3);
    CHECK(out.checkpoint_counts[0] == 4096);
    CHECK(out.checkpoint_counts[1] == 8192);
    CHECK(out.checkpoint_counts[2] == 10000);
}

TEST_CASE("run_until stops when the precision target is met") {
    // Constant stream: half-width 0 at the first checkpoint.
    VectorSource source(std::vector<Scalar>{Scalar{5.0, 0.0}});
    StopRule rule;
    rule.max_samples = std::uint64_t{1} << 40;
    rule.epsilon = 1e-6;
    const RunOutcome out = run_until(source, rule);
    CHECK(out.target_met);
    CHECK(out.moments.count() == kCheckpointInterval);
    CHECK(out.estimate.half_width == 0.0);
    CHECK(out.estimate.point.real() == doctest::Approx(5.0));
}

TEST_CASE("run_until validates its rule") {
    VectorSource source(std::vector<Scalar>{Scalar{1.0, 0.0}});
    StopRule zero;
    CHECK_THROWS_AS(run_until(source, zero), ParameterError);
    StopRule negative;
    negative.max_samples = 10;
    negative.epsilon = -1.0;
    CHECK_THROWS_AS(run_until(source, negative), ParameterError);
}
