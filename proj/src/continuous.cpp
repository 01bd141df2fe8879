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

#include "permlab/continuous.hpp"

#include <cmath>

#include "permlab/errors.hpp"

namespace permlab {

std::vector<Scalar> draw_gaussian_vector(std::size_t n, Rng& rng) {
    std::vector<Scalar> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = rng.complex_gaussian();
    return out;
}

LuIntegrand::LuIntegrand(const Matrix& a) : n_(a.rows()) {
    if (a.rows() != a.cols()) {
        throw ShapeError("Gaussian-integral estimators need a square matrix");
    }
    if (!a.is_real()) {
        throw DomainError("Gaussian-integral estimators accept real matrices only");
    }
    factors_ = lup_decompose(a);
}

Scalar LuIntegrand::evaluate(const Scalar* phi) const {
    Scalar product{1.0, 0.0};
    const Matrix& l = factors_.l;
    const Matrix& u = factors_.u;
    for (std::size_t i = 0; i < n_; ++i) {
        Scalar column_part{0.0, 0.0};
        for (std::size_t k = 0; k <= i; ++k) {
            column_part += std::conj(phi[k]) * u.at(k, i);
        }
        Scalar row_part = phi[i];  // unit diagonal of L
        for (std::size_t j = 0; j < i; ++j) {
            row_part += l.at(i, j) * phi[j];
        }
        product *= column_part * row_part;
    }
    return product;
}

SvdIntegrand::SvdIntegrand(const Matrix& a) : n_(a.rows()) {
    if (a.rows() != a.cols()) {
        throw ShapeError("Gaussian-integral estimators need a square matrix");
    }
    if (!a.is_real()) {
        throw DomainError("Gaussian-integral estimators accept real matrices only");
    }
    const SvdFactors svd = svd_decompose(a);
    rank_ = svd.rank;
    left_.assign(n_ * rank_, 0.0);
    right_.assign(n_ * rank_, 0.0);
    for (std::size_t j = 0; j < rank_; ++j) {
        const double root = std::sqrt(svd.sigma[j]);
        for (std::size_t i = 0; i < n_; ++i) {
            left_[i * rank_ + j] = svd.u.at(i, j).real() * root;
            right_[i * rank_ + j] = svd.v.at(i, j).real() * root;
        }
    }
}

Scalar SvdIntegrand::evaluate(const Scalar* phi) const {
    Scalar product{1.0, 0.0};
    for (std::size_t i = 0; i < n_; ++i) {
        Scalar row_part{0.0, 0.0};
        Scalar conj_part{0.0, 0.0};
        for (std::size_t j = 0; j < rank_; ++j) {
            row_part += left_[i * rank_ + j] * phi[j];
            conj_part += right_[i * rank_ + j] * std::conj(phi[j]);
        }
        product *= row_part * conj_part;
    }
    return product;
}

}  // namespace permlab
