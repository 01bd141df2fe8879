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

#include "permlab/lup.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "permlab/errors.hpp"

namespace permlab {

namespace detail {

int lup_compact(Scalar* a, std::size_t n, std::size_t* row_swaps) {
    int parity = 1;
    for (std::size_t k = 0; k < n; ++k) {
        // Pivot on the largest magnitude in the remaining column; ties keep
        // the topmost row so the factorization is deterministic.
        std::size_t piv = k;
        double best = std::abs(a[k * n + k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            double m = std::abs(a[i * n + k]);
            if (m > best) {
                best = m;
                piv = i;
            }
        }
        if (row_swaps) row_swaps[k] = piv;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
            parity = -parity;
        }
        const Scalar pivot = a[k * n + k];
        if (best == 0.0) continue;  // singular column: zero pivot retained, nothing below
        for (std::size_t i = k + 1; i < n; ++i) {
            Scalar m = a[i * n + k] / pivot;
            a[i * n + k] = m;
            if (m != Scalar{0.0, 0.0})
                for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= m * a[k * n + j];
        }
    }
    return parity;
}

ScaledValue det_from_compact(const Scalar* lu, std::size_t n, int parity) {
    ScaledValue det = ScaledValue::one();
    for (std::size_t k = 0; k < n; ++k) det *= lu[k * n + k];
    if (parity < 0) det.negate();
    return det;
}

}  // namespace detail

LupFactors lup_decompose(const Matrix& a) {
    if (!a.square())
        throw ShapeError("factorization requires a square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    const std::size_t n = a.rows();
    std::vector<Scalar> work(a.data(), a.data() + n * n);
    std::vector<std::size_t> swaps(n);
    int parity = detail::lup_compact(work.data(), n, swaps.data());

    LupFactors f;
    f.swap_parity = parity;
    f.l = Matrix::identity(n);
    f.u = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (j < i)
                f.l.at(i, j) = work[i * n + j];
            else
                f.u.at(i, j) = work[i * n + j];
        }
    f.perm.resize(n);
    std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
    for (std::size_t k = 0; k < n; ++k)
        if (swaps[k] != k) std::swap(f.perm[k], f.perm[swaps[k]]);
    return f;
}

ScaledValue determinant(const LupFactors& f) {
    ScaledValue det = ScaledValue::one();
    for (std::size_t k = 0; k < f.u.rows(); ++k) det *= f.u.at(k, k);
    if (f.swap_parity < 0) det.negate();
    return det;
}

ScaledValue determinant(const Matrix& a) {
    if (!a.square())
        throw ShapeError("determinant requires a square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    const std::size_t n = a.rows();
    std::vector<Scalar> work(a.data(), a.data() + n * n);
    int parity = detail::lup_compact(work.data(), n, nullptr);
    return detail::det_from_compact(work.data(), n, parity);
}

}  // namespace permlab
