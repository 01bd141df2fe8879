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
#include <memory>

#include "corpus.hpp"
#include "permlab/continuous.hpp"
#include "permlab/errors.hpp"
#include "permlab/estimators.hpp"
#include "permlab/stats.hpp"

using namespace permlab;
using permtest::per_laplace;

namespace {

RunningMoments sample_estimator(const Matrix& a, EstimatorKind kind,
                                std::uint64_t seed, int count) {
    EstimatorSpec spec;
    spec.kind = kind;
    const auto prepared = std::make_shared<const PreparedEstimator>(a, spec);
    EstimatorStream stream(prepared, seed, 0);
    RunningMoments m;
    for (int i = 0; i < count; ++i) m.update(stream.next());
    return m;
}

bool interval_contains(const RunningMoments& m, double confidence, double want) {
    const IntervalEstimate est = interval(m, confidence);
    return want >= est.point.real() - est.half_width &&
           want <= est.point.real() + est.half_width;
}

}  // namespace

TEST_CASE("construction requirements") {
    CHECK_THROWS_AS(LuIntegrand(Matrix(2, 3)), ShapeError);
    CHECK_THROWS_AS(SvdIntegrand(Matrix(2, 3)), ShapeError);
    Matrix complex_m(2, 2);
    complex_m.at(0, 0) = Scalar{1.0, 1.0};
    complex_m.at(1, 1) = Scalar{1.0, 0.0};
    CHECK_THROWS_AS((void)LuIntegrand{complex_m}, DomainError);
    CHECK_THROWS_AS((void)SvdIntegrand{complex_m}, DomainError);
}

TEST_CASE("gaussian draws have the right moments") {
    Rng rng(0xc0ffee, 0);
    RunningMoments abs2;
    for (int i = 0; i < 200000; ++i) {
        const auto v = draw_gaussian_vector(1, rng);
        abs2.update(Scalar{std::norm(v[0]), 0.0});
    }
    // |z|^2 is Exp(1): mean 1, variance 1.
    CHECK(std::abs(abs2.mean().real() - 1.0) < 0.01);
    CHECK(std::abs(abs2.variance_re() - 1.0) < 0.02);
}

TEST_CASE("gaussian_count: n for LU, rank for SVD") {
    const Matrix a{{1, 2}, {3, 4}};
    CHECK(LuIntegrand(a).gaussian_count() == 2);
    CHECK(SvdIntegrand(a).gaussian_count() == 2);

    // Rank-1 matrices consume exactly one Gaussian per sample.
    const Matrix ones = Matrix::constant(3, 3, Scalar{1.0, 0.0});
    CHECK(SvdIntegrand(ones).rank() == 1);
    CHECK(SvdIntegrand(ones).gaussian_count() == 1);
    CHECK(LuIntegrand(ones).gaussian_count() == 3);

    CHECK(SvdIntegrand(Matrix(2, 2)).rank() == 0);
}

TEST_CASE("rank-1 integrand reduces to a pure power") {
    // For the 3x3 all-ones matrix, A = u sigma v^T with sigma = 3 and
    // u = v = 1/sqrt(3); the integrand is |phi|^6 in a single Gaussian.
    const Matrix ones = Matrix::constant(3, 3, Scalar{1.0, 0.0});
    const SvdIntegrand svd(ones);
    Rng rng(0xabc, 0);
    for (int i = 0; i < 32; ++i) {
        const Scalar phi = rng.complex_gaussian();
        const Scalar got = svd.evaluate(&phi);
        const double want = std::pow(std::abs(phi), 6.0);
        CHECK(std::abs(got - Scalar{want, 0.0}) < 1e-13 * (1.0 + want));
    }
}

TEST_CASE("LU integrand expectation: permutation-invariant construction") {
    // A matrix that forces row pivoting: the (0,0) entry is the smallest.
    const Matrix a{{0.01, 2.0}, {3.0, 0.5}};
    const LuIntegrand lu(a);
    Rng rng(0x1u, 0);
    RunningMoments m;
    std::vector<Scalar> phi(2);
    for (int i = 0; i < 400000; ++i) {
        phi[0] = rng.complex_gaussian();
        phi[1] = rng.complex_gaussian();
        m.update(lu.evaluate(phi.data()));
    }
    const double want = per_laplace(a).real();  // 0.01*0.5 + 2*3 = 6.005
    CHECK(interval_contains(m, 0.999, want));
}

TEST_CASE("negative entries are fine for the continuous estimators") {
    const Matrix a{{-1, 1}, {1, 1}};  // per = 0
    const RunningMoments lu =
        sample_estimator(a, EstimatorKind::kLuGaussian, 5, 300000);
    const RunningMoments svd =
        sample_estimator(a, EstimatorKind::kSvdGaussian, 5, 300000);
    CHECK(interval_contains(lu, 0.999, 0.0));
    CHECK(interval_contains(svd, 0.999, 0.0));
}

TEST_CASE("estimator streams: LU and SVD agree with the permanent") {
    Rng seeder(0xd00d, 0);
    for (int rep = 0; rep < 3; ++rep) {
        Matrix a = permtest::random_real_matrix(seeder, 3, -1.0, 2.0);
        const double want = per_laplace(a).real();
        const RunningMoments lu =
            sample_estimator(a, EstimatorKind::kLuGaussian, 100 + rep, 400000);
        const RunningMoments svd =
            sample_estimator(a, EstimatorKind::kSvdGaussian, 200 + rep, 400000);
        CAPTURE(rep);
        CHECK(interval_contains(lu, 0.999, want));
        CHECK(interval_contains(svd, 0.999, want));
    }
}

TEST_CASE("prepared continuous estimators reject enumeration requests") {
    EstimatorSpec spec;
    spec.kind = EstimatorKind::kSvdGaussian;
    const Matrix a{{1, 1}, {1, 1}};
    const PreparedEstimator prepared(a, spec);
    CHECK_FALSE(prepared.discrete());
    CHECK(prepared.config_space_size() == 0);
    auto ws = prepared.make_workspace();
    const std::uint32_t digits[1] = {0};
    CHECK_THROWS_AS(prepared.evaluate(digits, ws), ParameterError);
}
