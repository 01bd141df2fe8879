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
#include <string>
#include <vector>

#include "permlab/matrix.hpp"
#include "permlab/scalar.hpp"

namespace permlab {

enum class ExactAlgorithm { naive, ryser, glynn, gauge_z2, gauge_zp };

const char* to_string(ExactAlgorithm alg);

/// Inverse of to_string; throws ParameterError for an unknown name.
ExactAlgorithm exact_algorithm_from_name(const std::string& name);

struct ExactOptions {
    /// Worker threads for the configuration-space sums; <= 0 means one per
    /// hardware thread.  Results are bit-identical for any thread count
    /// because partial sums are always formed over fixed index blocks and
    /// merged in block order.
    int threads = 1;
    /// Lift the desk-scale size guards (the caller accepts the runtime).
    bool override_size_guard = false;
};

struct ExactResult {
    ScaledValue value;
    std::uint64_t terms_evaluated = 0;
    ExactAlgorithm algorithm = ExactAlgorithm::naive;
    /// |imaginary part| that was discarded when a root-of-unity sum was
    /// collapsed to a real result for real input; 0 otherwise.
    double imag_residual = 0.0;
};

/// Permutation-sum definition, sum over all n! column choices.  The slowest
/// route and therefore the project-wide oracle everything else is tested
/// against.  Guarded to n <= 12.
ExactResult per_naive(const Matrix& a, const ExactOptions& opts = {});

/// Inclusion-exclusion over column subsets in Gray-code order, 2^n - 1 terms,
/// O(n) work per term.  Guarded to n <= 30.
ExactResult per_ryser(const Matrix& a, const ExactOptions& opts = {});

/// Half-lattice sign average: 2^(n-1) sign vectors with the first sign
/// pinned, Gray-code order, +-2 row-sum updates, compensated term summation.
/// Guarded to n <= 30.
ExactResult per_glynn(const Matrix& a, const ExactOptions& opts = {});

/// Full two-point sign average without the pinned first sign: 2^n terms.
/// Agrees with per_glynn exactly in exact arithmetic; kept as an independent
/// cross-check.  Guarded to n <= 26.
ExactResult per_gauge_z2_full(const Matrix& a, const ExactOptions& opts = {});

/// Full p-th root-of-unity average: p^n phase vectors, each term
/// (prod_k omega^-q_k) * prod_i (sum_j a_ij omega^q_j).  For real input the
/// imaginary part of the sum is discarded and recorded as imag_residual.
/// Guarded to p^n <= 2^26.
ExactResult per_gauge_zp_full(const Matrix& a, int p, const ExactOptions& opts = {});

/// Incremental state of the inclusion-exclusion sweep: the column subset,
/// its row sums, and the subset-size parity.  Exposed so tests can check the
/// incrementally maintained sums against fresh recomputation mid-iteration.
class SubsetGraySweep {
public:
    SubsetGraySweep(const Matrix& a, std::uint64_t subset_mask);

    /// Move from subset gray(k-1) to gray(k): flips column countr_zero(k).
    void step_to(std::uint64_t k);
    void flip_column(unsigned j);

    std::uint64_t mask() const { return mask_; }
    /// (-1)^|subset|
    int subset_parity() const { return parity_; }
    const std::vector<Scalar>& row_sums() const { return row_sums_; }
    std::vector<Scalar> fresh_row_sums() const;
    /// (-1)^|subset| * prod_i row_sums[i]
    Scalar signed_product() const;

private:
    const Matrix* a_;
    std::uint64_t mask_ = 0;
    int parity_ = 1;
    std::vector<Scalar> row_sums_;
};

/// Incremental state of a +-1 sign sweep over columns [col_offset, n): sign
/// vector, row sums, and overall sign product.  The half-lattice sum uses
/// col_offset = 1 (first sign pinned to +1), the full sum uses 0.
class SignGraySweep {
public:
    SignGraySweep(const Matrix& a, unsigned free_signs, unsigned col_offset,
                  std::uint64_t gray_mask);

    /// Move from gray(k-1) to gray(k): flips free sign countr_zero(k).
    void step_to(std::uint64_t k);
    void flip_bit(unsigned b);

    std::uint64_t mask() const { return mask_; }
    /// Product of all n signs (pinned ones are +1).
    int sign_product() const { return sign_; }
    const std::vector<Scalar>& row_sums() const { return row_sums_; }
    std::vector<Scalar> fresh_row_sums() const;
    /// sign_product * prod_i row_sums[i]
    Scalar signed_product() const;

private:
    const Matrix* a_;
    unsigned free_signs_ = 0;
    unsigned col_offset_ = 0;
    std::uint64_t mask_ = 0;
    int sign_ = 1;
    std::vector<Scalar> row_sums_;
};

/// Incremental state of the p-ary phase sweep: base-p digit vector (little
/// endian, digit d encodes q = d + 1), row sums against omega^q, and the
/// running phase-exponent sum.
class RadixSweep {
public:
    RadixSweep(const Matrix& a, int p, std::uint64_t start_index);

    /// Odometer increment (amortized O(1) digit changes).
    void advance();

    const std::vector<int>& digits() const { return digits_; }
    const std::vector<Scalar>& row_sums() const { return row_sums_; }
    std::vector<Scalar> fresh_row_sums() const;
    /// omega^(-sum_k q_k) * prod_i row_sums[i]
    Scalar term() const;

private:
    void apply_digit_change(std::size_t pos, int new_digit);

    const Matrix* a_;
    int p_ = 2;
    std::vector<Scalar> roots_;
    std::vector<int> digits_;
    int q_sum_mod_p_ = 0;
    std::vector<Scalar> row_sums_;
};

}  // namespace permlab
