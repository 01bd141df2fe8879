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

#include "permlab/matrix.hpp"

namespace permlab {

/// A = U * diag(sigma) * V^T with sigma sorted nonincreasing and U, V
/// orthogonal (real input only).
struct SvdFactors {
    Matrix u;
    Matrix v;
    std::vector<double> sigma;
    /// Count of singular values above the relative rank cutoff
    /// sigma[i] > 1e-12 * sigma[0].
    std::size_t rank = 0;
};

/// One-sided Jacobi SVD: rotates column pairs until all normalized
/// off-diagonal couplings fall below 1e-12, at most 30 sweeps (throws
/// ConvergenceError with the residual otherwise).  Complex input is
/// rejected with DomainError, non-square with ShapeError.
SvdFactors svd_decompose(const Matrix& a);

}  // namespace permlab
