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
#include <vector>

#include "permlab/lup.hpp"
#include "permlab/matrix.hpp"
#include "permlab/rng.hpp"
#include "permlab/scalar.hpp"
#include "permlab/svd.hpp"

namespace permlab {

/// n i.i.d. circular complex Gaussians with E[|z|^2] = 1 (so E[|z|^{2k}] = k!).
std::vector<Scalar> draw_gaussian_vector(std::size_t n, Rng& rng);

/// Permanent as a 2n-dimensional Gaussian integral through an LU
/// factorization: with the rows of A permuted so that A' = L*U (row
/// permutations leave the permanent unchanged), the integrand
///   prod_i (sum_k conj(phi_k) U_{ki}) * (sum_j L_{ij} phi_j)
/// has expectation per A over i.i.d. circular Gaussians phi.
class LuIntegrand {
public:
    /// Factorizes once; the object is immutable afterwards and safe to share
    /// across sampling workers.  Requires a square real matrix.
    explicit LuIntegrand(const Matrix& a);

    std::size_t size() const { return n_; }
    /// Number of Gaussian components consumed per sample (= n).
    std::size_t gaussian_count() const { return n_; }

    /// Integrand value at a point; `phi` must hold gaussian_count() entries.
    Scalar evaluate(const Scalar* phi) const;

    const LupFactors& factors() const { return factors_; }

private:
    std::size_t n_ = 0;
    LupFactors factors_;
};

/// Permanent as a Gaussian integral through an SVD: with A = U diag(sigma) V^T,
/// the integrand
///   prod_i (sum_j U_{ij} sqrt(sigma_j) phi_j) * (sum_k V_{ik} sqrt(sigma_k) conj(phi_k))
/// has expectation per A.  Sums run over the numerical rank only, so a rank-r
/// matrix consumes exactly r Gaussian components per sample.
class SvdIntegrand {
public:
    explicit SvdIntegrand(const Matrix& a);

    std::size_t size() const { return n_; }
    std::size_t rank() const { return rank_; }
    /// Number of Gaussian components consumed per sample (= rank).
    std::size_t gaussian_count() const { return rank_; }

    Scalar evaluate(const Scalar* phi) const;

private:
    std::size_t n_ = 0;
    std::size_t rank_ = 0;
    /// Row-major n x rank tables: left_(i,j) = U_ij*sqrt(sigma_j),
    /// right_(i,k) = V_ik*sqrt(sigma_k).
    std::vector<double> left_;
    std::vector<double> right_;
};

}  // namespace permlab
