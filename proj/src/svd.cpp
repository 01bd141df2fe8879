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

#include "permlab/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "permlab/errors.hpp"

namespace permlab {

namespace {

constexpr double kOffDiagTol = 1e-12;
constexpr int kMaxSweeps = 30;
constexpr double kRankCutoff = 1e-12;

}  // namespace

SvdFactors svd_decompose(const Matrix& a) {
    if (!a.square())
        throw ShapeError("decomposition requires a square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    if (!a.is_real())
        throw DomainError("complex input is unsupported by the one-sided Jacobi routine");

    const std::size_t n = a.rows();
    // w holds the working columns of A; v accumulates the right rotations.
    std::vector<double> w(n * n), v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) w[i * n + j] = a.at(i, j).real();
    for (std::size_t j = 0; j < n; ++j) v[j * n + j] = 1.0;

    double residual = 0.0;
    bool converged = (n < 2);
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        converged = true;
        residual = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    alpha += w[i * n + p] * w[i * n + p];
                    beta += w[i * n + q] * w[i * n + q];
                    gamma += w[i * n + p] * w[i * n + q];
                }
                if (alpha == 0.0 || beta == 0.0) continue;  // a zero column is already orthogonal
                double coupling = std::abs(gamma) / std::sqrt(alpha * beta);
                residual = std::max(residual, coupling);
                if (coupling <= kOffDiagTol) continue;
                converged = false;

                double zeta = (beta - alpha) / (2.0 * gamma);
                double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                for (std::size_t i = 0; i < n; ++i) {
                    double wp = w[i * n + p], wq = w[i * n + q];
                    w[i * n + p] = c * wp - s * wq;
                    w[i * n + q] = s * wp + c * wq;
                    double vp = v[i * n + p], vq = v[i * n + q];
                    v[i * n + p] = c * vp - s * vq;
                    v[i * n + q] = s * vp + c * vq;
                }
            }
        }
    }
    if (!converged)
        throw ConvergenceError("column orthogonalization did not settle within " +
                                   std::to_string(kMaxSweeps) + " sweeps",
                               residual);

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        double norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm2 += w[i * n + j] * w[i * n + j];
        sigma[j] = std::sqrt(norm2);
    }

    // Sort singular values nonincreasing, carrying the columns along.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    SvdFactors f;
    f.u = Matrix(n, n);
    f.v = Matrix(n, n);
    f.sigma.resize(n);
    for (std::size_t jj = 0; jj < n; ++jj) {
        std::size_t j = order[jj];
        f.sigma[jj] = sigma[j];
        for (std::size_t i = 0; i < n; ++i) f.v.at(i, jj) = Scalar{v[i * n + j], 0.0};
        if (sigma[j] > 0.0)
            for (std::size_t i = 0; i < n; ++i)
                f.u.at(i, jj) = Scalar{w[i * n + j] / sigma[j], 0.0};
    }

    // Zero singular values leave U columns undetermined; complete them to an
    // orthonormal basis by Gram-Schmidt over canonical vectors so that
    // U^T U = I holds even for rank-deficient input.
    for (std::size_t jj = 0; jj < n; ++jj) {
        if (f.sigma[jj] > 0.0) continue;
        for (std::size_t cand = 0; cand < n; ++cand) {
            std::vector<double> col(n, 0.0);
            col[cand] = 1.0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == jj || (f.sigma[k] == 0.0 && k > jj)) continue;
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += f.u.at(i, k).real() * col[i];
                for (std::size_t i = 0; i < n; ++i) col[i] -= dot * f.u.at(i, k).real();
            }
            double norm2 = 0.0;
            for (double x : col) norm2 += x * x;
            if (norm2 > 0.25) {
                double inv = 1.0 / std::sqrt(norm2);
                for (std::size_t i = 0; i < n; ++i) f.u.at(i, jj) = Scalar{col[i] * inv, 0.0};
                break;
            }
        }
    }

    double cutoff = n == 0 ? 0.0 : kRankCutoff * f.sigma[0];
    f.rank = 0;
    for (double s : f.sigma)
        if (s > cutoff && s > 0.0) ++f.rank;
    return f;
}

}  // namespace permlab
