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
#include "permlab/scalar.hpp"

namespace permlab {

/// Row-pivoted factorization: applying the row permutation to A gives L * U,
/// i.e. A[perm[i]][j] == (L*U)[i][j].
struct LupFactors {
    Matrix l;                       ///< unit lower triangular
    Matrix u;                       ///< upper triangular (zero pivots retained)
    std::vector<std::size_t> perm;  ///< perm[i] = source row of pivoted row i
    int swap_parity = 1;            ///< (-1)^(number of row swaps)
};

/// Partial pivoting by maximum magnitude; exactly singular input yields valid
/// factors with zero pivots on U's diagonal.  Throws ShapeError when A is not
/// square.
LupFactors lup_decompose(const Matrix& a);

/// det(A) = parity * prod(diag U), accumulated in scaled form so long pivot
/// products cannot overflow or underflow.
ScaledValue determinant(const LupFactors& f);
ScaledValue determinant(const Matrix& a);

namespace detail {

/// In-place compact factorization of a row-major n*n buffer (L below the
/// diagonal with implicit unit diagonal, U on and above).  Returns the swap
/// parity.  `row_swaps` receives the pivot row chosen at each step (LAPACK
/// style); pass nullptr when only the parity is needed.
int lup_compact(Scalar* a, std::size_t n, std::size_t* row_swaps);

/// Determinant straight from a compact factorization.
ScaledValue det_from_compact(const Scalar* lu, std::size_t n, int parity);

}  // namespace detail

}  // namespace permlab
