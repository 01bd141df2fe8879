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

#include "permlab/exact.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <thread>

#include "permlab/errors.hpp"
#include "permlab/rng.hpp"

namespace permlab {

const char* to_string(ExactAlgorithm alg) {
    switch (alg) {
        case ExactAlgorithm::naive: return "naive";
        case ExactAlgorithm::ryser: return "ryser";
        case ExactAlgorithm::glynn: return "glynn";
        case ExactAlgorithm::gauge_z2: return "gauge-z2";
        case ExactAlgorithm::gauge_zp: return "gauge-zp";
    }
    return "?";
}

ExactAlgorithm exact_algorithm_from_name(const std::string& name) {
    if (name == "naive") return ExactAlgorithm::naive;
    if (name == "ryser") return ExactAlgorithm::ryser;
    if (name == "glynn") return ExactAlgorithm::glynn;
    if (name == "gauge-z2") return ExactAlgorithm::gauge_z2;
    if (name == "gauge-zp") return ExactAlgorithm::gauge_zp;
    throw ParameterError("unknown exact algorithm '" + name +
                         "'; expected naive, ryser, glynn, gauge-z2, or gauge-zp");
}

namespace {

// Fixed block size for configuration-space sums.  Each block's terms are
// summed with compensation, block results are folded in block order, and
// every block rebuilds its sweep state from its start index.  This makes the
// result independent of the thread count (bit-identical) and bounds
// incremental-update drift to one block.
constexpr std::uint64_t kBlockLen = 1u << 16;

void require_square(const Matrix& a) {
    if (!a.square())
        throw ShapeError("permanent requires a square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

void check_guard(std::size_t n, std::size_t limit, const char* what, bool override_guard) {
    if (!override_guard && n > limit)
        throw SizeGuardError(std::string(what) + " is guarded to n <= " + std::to_string(limit) +
                             ", got n = " + std::to_string(n) +
                             " (pass the override to run anyway)");
}

std::uint64_t gray_code(std::uint64_t k) { return k ^ (k >> 1); }

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Evaluate block_fn over [begin, end) split into kBlockLen-sized blocks and
/// fold the block partials in index order.
Scalar blocked_sum(std::uint64_t begin, std::uint64_t end, int threads,
                   const std::function<Scalar(std::uint64_t, std::uint64_t)>& block_fn) {
    if (begin >= end) return Scalar{0.0, 0.0};
    const std::uint64_t span = end - begin;
    const std::uint64_t num_blocks = (span + kBlockLen - 1) / kBlockLen;
    std::vector<Scalar> partials(num_blocks);

    auto run_block = [&](std::uint64_t b) {
        std::uint64_t lo = begin + b * kBlockLen;
        std::uint64_t hi = std::min(end, lo + kBlockLen);
        partials[b] = block_fn(lo, hi);
    };

    int workers = std::min<std::uint64_t>(resolve_threads(threads), num_blocks);
    if (workers <= 1) {
        for (std::uint64_t b = 0; b < num_blocks; ++b) run_block(b);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    std::uint64_t b = next.fetch_add(1);
                    if (b >= num_blocks) break;
                    run_block(b);
                }
            });
        for (auto& t : pool) t.join();
    }

    ComplexCompensatedSum acc;
    for (const Scalar& s : partials) acc.add(s);
    return acc.value();
}

std::uint64_t factorial_u64(std::size_t n) {
    std::uint64_t f = 1;
    for (std::size_t k = 2; k <= n && k <= 20; ++k) f *= k;
    return f;  // saturates silently past 20!, far beyond any runnable size
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp, std::uint64_t limit) {
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (v > limit / base) return limit + 1;  // would exceed the guard
        v *= base;
    }
    return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sweep state classes
// ---------------------------------------------------------------------------

SubsetGraySweep::SubsetGraySweep(const Matrix& a, std::uint64_t subset_mask)
    : a_(&a), mask_(subset_mask) {
    parity_ = (std::popcount(mask_) % 2 == 0) ? 1 : -1;
    row_sums_ = fresh_row_sums();
}

void SubsetGraySweep::step_to(std::uint64_t k) {
    flip_column(static_cast<unsigned>(std::countr_zero(k)));
}

void SubsetGraySweep::flip_column(unsigned j) {
    const std::size_t n = a_->rows();
    const bool was_in = (mask_ >> j) & 1u;
    mask_ ^= (std::uint64_t{1} << j);
    parity_ = -parity_;
    if (was_in)
        for (std::size_t i = 0; i < n; ++i) row_sums_[i] -= a_->at(i, j);
    else
        for (std::size_t i = 0; i < n; ++i) row_sums_[i] += a_->at(i, j);
}

std::vector<Scalar> SubsetGraySweep::fresh_row_sums() const {
    const std::size_t n = a_->rows();
    std::vector<Scalar> sums(n, Scalar{0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j)
        if ((mask_ >> j) & 1u)
            for (std::size_t i = 0; i < n; ++i) sums[i] += a_->at(i, j);
    return sums;
}

Scalar SubsetGraySweep::signed_product() const {
    Scalar prod{static_cast<double>(parity_), 0.0};
    for (const Scalar& r : row_sums_) prod *= r;
    return prod;
}

SignGraySweep::SignGraySweep(const Matrix& a, unsigned free_signs, unsigned col_offset,
                             std::uint64_t gray_mask)
    : a_(&a), free_signs_(free_signs), col_offset_(col_offset), mask_(gray_mask) {
    sign_ = (std::popcount(mask_) % 2 == 0) ? 1 : -1;
    row_sums_ = fresh_row_sums();
}

void SignGraySweep::step_to(std::uint64_t k) {
    flip_bit(static_cast<unsigned>(std::countr_zero(k)));
}

void SignGraySweep::flip_bit(unsigned b) {
    const std::size_t n = a_->rows();
    mask_ ^= (std::uint64_t{1} << b);
    sign_ = -sign_;
    const unsigned col = col_offset_ + b;
    // New sign of this column: -1 if the bit is now set.  The row sums move
    // by 2 * new_sign * a_ij.
    const double step = ((mask_ >> b) & 1u) ? -2.0 : 2.0;
    for (std::size_t i = 0; i < n; ++i) row_sums_[i] += step * a_->at(i, col);
}

std::vector<Scalar> SignGraySweep::fresh_row_sums() const {
    const std::size_t n = a_->rows();
    std::vector<Scalar> sums(n, Scalar{0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j) {
        double s = 1.0;
        if (j >= col_offset_) {
            unsigned b = static_cast<unsigned>(j - col_offset_);
            if (b < free_signs_ && ((mask_ >> b) & 1u)) s = -1.0;
        }
        for (std::size_t i = 0; i < n; ++i) sums[i] += s * a_->at(i, j);
    }
    return sums;
}

Scalar SignGraySweep::signed_product() const {
    Scalar prod{static_cast<double>(sign_), 0.0};
    for (const Scalar& r : row_sums_) prod *= r;
    return prod;
}

RadixSweep::RadixSweep(const Matrix& a, int p, std::uint64_t start_index)
    : a_(&a), p_(p), roots_(roots_of_unity(p)) {
    const std::size_t n = a.rows();
    digits_.resize(n, 0);
    std::uint64_t idx = start_index;
    for (std::size_t j = 0; j < n; ++j) {
        digits_[j] = static_cast<int>(idx % static_cast<std::uint64_t>(p));
        idx /= static_cast<std::uint64_t>(p);
    }
    q_sum_mod_p_ = 0;
    for (int d : digits_) q_sum_mod_p_ = (q_sum_mod_p_ + d + 1) % p_;
    row_sums_ = fresh_row_sums();
}

void RadixSweep::apply_digit_change(std::size_t pos, int new_digit) {
    const std::size_t n = a_->rows();
    const Scalar old_root = roots_[static_cast<std::size_t>((digits_[pos] + 1) % p_)];
    const Scalar new_root = roots_[static_cast<std::size_t>((new_digit + 1) % p_)];
    const Scalar delta = new_root - old_root;
    for (std::size_t i = 0; i < n; ++i) row_sums_[i] += delta * a_->at(i, pos);
    q_sum_mod_p_ = (q_sum_mod_p_ + (new_digit - digits_[pos]) % p_ + p_) % p_;
    digits_[pos] = new_digit;
}

void RadixSweep::advance() {
    for (std::size_t pos = 0; pos < digits_.size(); ++pos) {
        if (digits_[pos] + 1 < p_) {
            apply_digit_change(pos, digits_[pos] + 1);
            return;
        }
        apply_digit_change(pos, 0);  // carry
    }
}

std::vector<Scalar> RadixSweep::fresh_row_sums() const {
    const std::size_t n = a_->rows();
    std::vector<Scalar> sums(n, Scalar{0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j) {
        const Scalar w = roots_[static_cast<std::size_t>((digits_[j] + 1) % p_)];
        for (std::size_t i = 0; i < n; ++i) sums[i] += w * a_->at(i, j);
    }
    return sums;
}

Scalar RadixSweep::term() const {
    Scalar prod = roots_[static_cast<std::size_t>((p_ - q_sum_mod_p_) % p_)];
    for (const Scalar& r : row_sums_) prod *= r;
    return prod;
}

// ---------------------------------------------------------------------------
// Exact kernels
// ---------------------------------------------------------------------------

ExactResult per_naive(const Matrix& a, const ExactOptions& opts) {
    require_square(a);
    const std::size_t n = a.rows();
    check_guard(n, 12, "the permutation sum", opts.override_size_guard);

    ExactResult res;
    res.algorithm = ExactAlgorithm::naive;
    res.terms_evaluated = factorial_u64(n);
    if (n == 0) {
        res.value = ScaledValue::one();
        return res;
    }
    std::vector<std::size_t> cols(n);
    std::iota(cols.begin(), cols.end(), std::size_t{0});
    ComplexCompensatedSum acc;
    do {
        Scalar prod{1.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) prod *= a.at(i, cols[i]);
        acc.add(prod);
    } while (std::next_permutation(cols.begin(), cols.end()));
    res.value = ScaledValue::from(acc.value());
    return res;
}

ExactResult per_ryser(const Matrix& a, const ExactOptions& opts) {
    require_square(a);
    const std::size_t n = a.rows();
    check_guard(n, 30, "the inclusion-exclusion sum", opts.override_size_guard);

    ExactResult res;
    res.algorithm = ExactAlgorithm::ryser;
    if (n == 0) {
        res.value = ScaledValue::one();
        res.terms_evaluated = 0;
        return res;
    }
    const std::uint64_t total = std::uint64_t{1} << n;
    res.terms_evaluated = total - 1;

    Scalar sum = blocked_sum(1, total, opts.threads, [&](std::uint64_t lo, std::uint64_t hi) {
        SubsetGraySweep sweep(a, gray_code(lo - 1));
        ComplexCompensatedSum acc;
        for (std::uint64_t k = lo; k < hi; ++k) {
            sweep.step_to(k);
            acc.add(sweep.signed_product());
        }
        return acc.value();
    });
    if (n % 2 != 0) sum = -sum;
    res.value = ScaledValue::from(sum);
    return res;
}

ExactResult per_glynn(const Matrix& a, const ExactOptions& opts) {
    require_square(a);
    const std::size_t n = a.rows();
    check_guard(n, 30, "the half-lattice sign sum", opts.override_size_guard);

    ExactResult res;
    res.algorithm = ExactAlgorithm::glynn;
    if (n == 0) {
        res.value = ScaledValue::one();
        res.terms_evaluated = 1;
        return res;
    }
    const std::uint64_t total = std::uint64_t{1} << (n - 1);
    res.terms_evaluated = total;

    Scalar sum = blocked_sum(0, total, opts.threads, [&](std::uint64_t lo, std::uint64_t hi) {
        SignGraySweep sweep(a, static_cast<unsigned>(n - 1), 1, gray_code(lo));
        ComplexCompensatedSum acc;
        acc.add(sweep.signed_product());
        for (std::uint64_t k = lo + 1; k < hi; ++k) {
            sweep.step_to(k);
            acc.add(sweep.signed_product());
        }
        return acc.value();
    });
    // Normalize by 2^(n-1); exact because it is a power-of-two scale.
    res.value = ScaledValue::from(
        Scalar{std::ldexp(sum.real(), -static_cast<int>(n - 1)),
               std::ldexp(sum.imag(), -static_cast<int>(n - 1))});
    return res;
}

ExactResult per_gauge_z2_full(const Matrix& a, const ExactOptions& opts) {
    require_square(a);
    const std::size_t n = a.rows();
    check_guard(n, 26, "the full two-point sign sum", opts.override_size_guard);

    ExactResult res;
    res.algorithm = ExactAlgorithm::gauge_z2;
    if (n == 0) {
        res.value = ScaledValue::one();
        res.terms_evaluated = 1;
        return res;
    }
    const std::uint64_t total = std::uint64_t{1} << n;
    res.terms_evaluated = total;

    Scalar sum = blocked_sum(0, total, opts.threads, [&](std::uint64_t lo, std::uint64_t hi) {
        SignGraySweep sweep(a, static_cast<unsigned>(n), 0, gray_code(lo));
        ComplexCompensatedSum acc;
        acc.add(sweep.signed_product());
        for (std::uint64_t k = lo + 1; k < hi; ++k) {
            sweep.step_to(k);
            acc.add(sweep.signed_product());
        }
        return acc.value();
    });
    res.value = ScaledValue::from(
        Scalar{std::ldexp(sum.real(), -static_cast<int>(n)),
               std::ldexp(sum.imag(), -static_cast<int>(n))});
    return res;
}

ExactResult per_gauge_zp_full(const Matrix& a, int p, const ExactOptions& opts) {
    require_square(a);
    if (p < 2) throw ParameterError("phase order p must be >= 2, got " + std::to_string(p));
    const std::size_t n = a.rows();

    ExactResult res;
    res.algorithm = ExactAlgorithm::gauge_zp;
    if (n == 0) {
        res.value = ScaledValue::one();
        res.terms_evaluated = 1;
        return res;
    }
    const std::uint64_t guard = std::uint64_t{1} << 26;
    std::uint64_t total = checked_pow(static_cast<std::uint64_t>(p), n, guard);
    if (total > guard && !opts.override_size_guard)
        throw SizeGuardError("the phase sum needs p^n <= 2^26 terms, got p = " + std::to_string(p) +
                             ", n = " + std::to_string(n) + " (pass the override to run anyway)");
    if (total > guard)
        total = checked_pow(static_cast<std::uint64_t>(p), n,
                            std::numeric_limits<std::uint64_t>::max() / 2);
    res.terms_evaluated = total;

    Scalar sum = blocked_sum(0, total, opts.threads, [&](std::uint64_t lo, std::uint64_t hi) {
        RadixSweep sweep(a, p, lo);
        ComplexCompensatedSum acc;
        acc.add(sweep.term());
        for (std::uint64_t k = lo + 1; k < hi; ++k) {
            sweep.advance();
            acc.add(sweep.term());
        }
        return acc.value();
    });
    Scalar value = sum / static_cast<double>(total);
    if (a.is_real()) {
        res.imag_residual = std::abs(value.imag());
        value = Scalar{value.real(), 0.0};
    }
    res.value = ScaledValue::from(value);
    return res;
}

}  // namespace permlab
