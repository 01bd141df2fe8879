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

#include "permlab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "permlab/errors.hpp"
#include "permlab/exact.hpp"
#include "permlab/lup.hpp"

namespace permlab {

namespace {

/// Kinds whose entries enter through a real square root.
bool needs_sqrt(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::kSignDeterminant:
        case EstimatorKind::kPhaseDeterminant:
        case EstimatorKind::kCustomScheme:
        case EstimatorKind::kPairing:
        case EstimatorKind::kRecursiveSquare:
            return true;
        default:
            return false;
    }
}

bool needs_root_order(EstimatorKind kind) {
    return kind == EstimatorKind::kPhaseDeterminant ||
           kind == EstimatorKind::kPairing || kind == EstimatorKind::kGauge;
}

void require_nonnegative_real(const Matrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Scalar v = a.at(i, j);
            if (v.imag() != 0.0) {
                throw DomainError(
                    "complex entry at (" + std::to_string(i) + ", " +
                    std::to_string(j) +
                    "): square-root-based estimators need nonnegative real "
                    "entries; use the gauge estimator, which takes no square "
                    "roots");
            }
            if (v.real() < 0.0) {
                throw DomainError(
                    "negative entry at (" + std::to_string(i) + ", " +
                    std::to_string(j) +
                    "): square-root-based estimators need nonnegative real "
                    "entries; use the gauge estimator or a custom scheme with "
                    "complex fixed multipliers");
            }
        }
    }
}

/// Unbiased estimate of per(base) by the squared-sub-permanent recursion:
/// draw one random-sign square root G of base; at depth 1 evaluate per G
/// exactly and return its square; deeper, return the product of two
/// independent depth-(d-1) estimates of per G (independence keeps the
/// product unbiased for (per G)^2).
Scalar recursive_estimate(const Matrix& base, int depth, Rng& rng) {
    const NonzeroPattern pattern = nonzeros(base);
    Matrix g(base.rows(), base.cols());
    for (const NonzeroEntry& e : pattern.entries) {
        const Scalar root = std::sqrt(e.value);
        g.at(e.row, e.col) = root * rng.sign();
    }
    if (depth <= 1) {
        ExactOptions opts;
        opts.threads = 1;
        const Scalar per_g = per_glynn(g, opts).value.to_scalar();
        return per_g * per_g;
    }
    return recursive_estimate(g, depth - 1, rng) *
           recursive_estimate(g, depth - 1, rng);
}

}  // namespace

std::string to_cli_name(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::kSignDeterminant: return "gg";
        case EstimatorKind::kPhaseDeterminant: return "kkll";
        case EstimatorKind::kCustomScheme: return "custom";
        case EstimatorKind::kPairing: return "pairing";
        case EstimatorKind::kGauge: return "gauge";
        case EstimatorKind::kRecursiveSquare: return "recursive";
        case EstimatorKind::kLuGaussian: return "lu-mc";
        case EstimatorKind::kSvdGaussian: return "svd-mc";
    }
    return "gg";
}

EstimatorKind estimator_from_cli_name(const std::string& name) {
    if (name == "gg") return EstimatorKind::kSignDeterminant;
    if (name == "kkll") return EstimatorKind::kPhaseDeterminant;
    if (name == "custom") return EstimatorKind::kCustomScheme;
    if (name == "pairing") return EstimatorKind::kPairing;
    if (name == "gauge") return EstimatorKind::kGauge;
    if (name == "recursive") return EstimatorKind::kRecursiveSquare;
    if (name == "lu-mc") return EstimatorKind::kLuGaussian;
    if (name == "svd-mc") return EstimatorKind::kSvdGaussian;
    throw ParameterError("unknown estimator '" + name +
                         "' (expected gg, kkll, custom, pairing, gauge, "
                         "recursive, lu-mc or svd-mc)");
}

bool is_discrete(EstimatorKind kind) {
    return kind != EstimatorKind::kLuGaussian &&
           kind != EstimatorKind::kSvdGaussian;
}

PreparedEstimator::PreparedEstimator(const Matrix& a, EstimatorSpec spec)
    : a_(a), spec_(std::move(spec)) {
    if (a_.rows() != a_.cols()) {
        throw ShapeError("permanent estimators need a square matrix");
    }
    if (needs_root_order(spec_.kind) && spec_.p < 2) {
        throw ParameterError("root order p must be at least 2");
    }
    if (needs_sqrt(spec_.kind)) {
        require_nonnegative_real(a_);
    }
    if (spec_.kind == EstimatorKind::kRecursiveSquare) {
        if (a_.rows() > kRecursiveSizeGuard) {
            throw SizeGuardError(
                "recursive estimator evaluates an exact permanent per sample; "
                "n = " + std::to_string(a_.rows()) + " exceeds the guard of " +
                std::to_string(kRecursiveSizeGuard));
        }
        if (spec_.depth < 1 || spec_.depth > kMaxRecursionDepth) {
            throw ParameterError("recursion depth must lie in 1.." +
                                 std::to_string(kMaxRecursionDepth));
        }
    }
    switch (spec_.kind) {
        case EstimatorKind::kLuGaussian:
            lu_ = std::make_shared<const LuIntegrand>(a_);
            break;
        case EstimatorKind::kSvdGaussian:
            svd_ = std::make_shared<const SvdIntegrand>(a_);
            break;
        default:
            prepare_discrete();
            break;
    }
}

void PreparedEstimator::prepare_discrete() {
    pattern_ = nonzeros(a_);
    const std::size_t m = pattern_.entries.size();

    if (needs_sqrt(spec_.kind)) {
        sqrt_values_.resize(m);
        for (std::size_t e = 0; e < m; ++e) {
            sqrt_values_[e] = std::sqrt(pattern_.entries[e].value.real());
        }
    }
    entry_fixed_.assign(m, Scalar{1.0, 0.0});
    entry_digit_.assign(m, -1);

    const auto add_digit = [this](std::uint32_t radix, std::vector<Scalar> table) {
        radices_.push_back(radix);
        multiplier_table_.push_back(std::move(table));
        return static_cast<int>(radices_.size()) - 1;
    };
    const auto sign_table = [](const Scalar& u) {
        return std::vector<Scalar>{u, -u};
    };
    const auto phase_table = [](int p, const Scalar& u) {
        const std::vector<Scalar> roots = roots_of_unity(p);
        std::vector<Scalar> table(static_cast<std::size_t>(p));
        for (int d = 0; d < p; ++d) {
            table[static_cast<std::size_t>(d)] = u * roots[(d + 1) % p];
        }
        return table;
    };

    switch (spec_.kind) {
        case EstimatorKind::kSignDeterminant:
        case EstimatorKind::kRecursiveSquare:
            for (std::size_t e = 0; e < m; ++e) {
                entry_digit_[e] = add_digit(2, sign_table(Scalar{1.0, 0.0}));
            }
            break;
        case EstimatorKind::kPhaseDeterminant:
        case EstimatorKind::kPairing:
            for (std::size_t e = 0; e < m; ++e) {
                entry_digit_[e] = add_digit(static_cast<std::uint32_t>(spec_.p),
                                            phase_table(spec_.p, Scalar{1.0, 0.0}));
            }
            break;
        case EstimatorKind::kCustomScheme: {
            spec_.scheme.validate(pattern_);
            for (std::size_t e = 0; e < m; ++e) {
                const NonzeroEntry& entry = pattern_.entries[e];
                const EntryChannel& ch =
                    spec_.scheme.channel_for(entry.row, entry.col);
                switch (ch.kind) {
                    case ChannelKind::kSign:
                        entry_digit_[e] = add_digit(2, sign_table(ch.fixed));
                        break;
                    case ChannelKind::kPhase:
                        entry_digit_[e] = add_digit(
                            static_cast<std::uint32_t>(ch.p),
                            phase_table(ch.p, ch.fixed));
                        break;
                    case ChannelKind::kFixed:
                        entry_fixed_[e] = ch.fixed;
                        break;
                }
            }
            break;
        }
        case EstimatorKind::kGauge:
            gauge_roots_ = roots_of_unity(spec_.p);
            for (std::size_t j = 0; j < a_.cols(); ++j) {
                add_digit(static_cast<std::uint32_t>(spec_.p),
                          phase_table(spec_.p, Scalar{1.0, 0.0}));
            }
            break;
        default:
            break;
    }

    config_space_size_ = 1;
    config_space_exact_ = true;
    for (const std::uint32_t r : radices_) {
        if (config_space_size_ > std::numeric_limits<std::uint64_t>::max() / r) {
            config_space_size_ = std::numeric_limits<std::uint64_t>::max();
            config_space_exact_ = false;
            break;
        }
        config_space_size_ *= r;
    }
}

PreparedEstimator::Workspace PreparedEstimator::make_workspace() const {
    Workspace ws;
    const std::size_t n = a_.rows();
    ws.cells.resize(n * n);
    ws.pivots.resize(n);
    ws.factors.resize(2 * n);
    if (lu_) ws.phi.resize(lu_->gaussian_count());
    if (svd_) ws.phi.resize(svd_->gaussian_count());
    ws.digits.resize(radices_.size());
    return ws;
}

Scalar PreparedEstimator::determinant_sample(const std::uint32_t* digits,
                                             Workspace& ws) const {
    const std::size_t n = a_.rows();
    std::fill(ws.cells.begin(), ws.cells.end(), Scalar{0.0, 0.0});
    for (std::size_t e = 0; e < pattern_.entries.size(); ++e) {
        const NonzeroEntry& entry = pattern_.entries[e];
        const int d = entry_digit_[e];
        const Scalar mult = d >= 0
            ? multiplier_table_[static_cast<std::size_t>(d)]
                               [digits[static_cast<std::size_t>(d)]]
            : entry_fixed_[e];
        ws.cells[entry.row * n + entry.col] = sqrt_values_[e] * mult;
    }
    const int parity = detail::lup_compact(ws.cells.data(), n, ws.pivots.data());
    const Scalar det = detail::det_from_compact(ws.cells.data(), n, parity).to_scalar();
    return Scalar{std::norm(det), 0.0};
}

Scalar PreparedEstimator::pairing_sample(const std::uint32_t* digits,
                                         Workspace& ws) const {
    const std::size_t n = a_.rows();
    Scalar* row_factors = ws.factors.data();
    Scalar* col_factors = ws.factors.data() + n;
    std::fill(ws.factors.begin(), ws.factors.end(), Scalar{0.0, 0.0});
    for (std::size_t e = 0; e < pattern_.entries.size(); ++e) {
        const NonzeroEntry& entry = pattern_.entries[e];
        const std::size_t d = static_cast<std::size_t>(entry_digit_[e]);
        const Scalar mult = multiplier_table_[d][digits[d]];
        row_factors[entry.row] += sqrt_values_[e] * mult;
        col_factors[entry.col] += sqrt_values_[e] * std::conj(mult);
    }
    Scalar product{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        product *= col_factors[i] * row_factors[i];
    }
    return product;
}

Scalar PreparedEstimator::gauge_sample(const std::uint32_t* digits,
                                       Workspace& ws) const {
    const std::size_t n = a_.rows();
    const std::uint32_t p = static_cast<std::uint32_t>(spec_.p);
    Scalar* col_mult = ws.factors.data();
    std::uint64_t phase_sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
        col_mult[j] = multiplier_table_[j][digits[j]];
        phase_sum += digits[j] + 1;
    }
    // Conjugate prefactor: the p-th root of unity of order -(sum of phases).
    const Scalar prefactor = gauge_roots_[static_cast<std::size_t>(
        (p - static_cast<std::uint32_t>(phase_sum % p)) % p)];
    Scalar product = prefactor;
    for (std::size_t i = 0; i < n; ++i) {
        Scalar row_sum{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            row_sum += a_.at(i, j) * col_mult[j];
        }
        product *= row_sum;
    }
    return product;
}

Scalar PreparedEstimator::recursive_sample(const std::uint32_t* digits,
                                           Workspace& ws) const {
    (void)ws;
    const std::size_t n = a_.rows();
    Matrix g(n, n);
    for (std::size_t e = 0; e < pattern_.entries.size(); ++e) {
        const NonzeroEntry& entry = pattern_.entries[e];
        const std::size_t d = static_cast<std::size_t>(entry_digit_[e]);
        g.at(entry.row, entry.col) =
            sqrt_values_[e] * multiplier_table_[d][digits[d]].real();
    }
    ExactOptions opts;
    opts.threads = 1;
    const Scalar per_g = per_glynn(g, opts).value.to_scalar();
    return per_g * per_g;
}

Scalar PreparedEstimator::evaluate(const std::uint32_t* digits, Workspace& ws) const {
    switch (spec_.kind) {
        case EstimatorKind::kSignDeterminant:
        case EstimatorKind::kPhaseDeterminant:
        case EstimatorKind::kCustomScheme:
            return determinant_sample(digits, ws);
        case EstimatorKind::kPairing:
            return pairing_sample(digits, ws);
        case EstimatorKind::kGauge:
            return gauge_sample(digits, ws);
        case EstimatorKind::kRecursiveSquare:
            if (spec_.depth != 1) {
                throw ParameterError(
                    "configuration evaluation of the recursive estimator is "
                    "defined for depth 1 only");
            }
            return recursive_sample(digits, ws);
        case EstimatorKind::kLuGaussian:
        case EstimatorKind::kSvdGaussian:
            break;
    }
    throw ParameterError("Gaussian-integral estimators have no finite "
                         "configuration space");
}

Scalar PreparedEstimator::sample_value(Rng& rng, Workspace& ws) const {
    if (lu_) {
        for (Scalar& z : ws.phi) z = rng.complex_gaussian();
        return lu_->evaluate(ws.phi.data());
    }
    if (svd_) {
        for (Scalar& z : ws.phi) z = rng.complex_gaussian();
        return svd_->evaluate(ws.phi.data());
    }
    for (std::size_t i = 0; i < radices_.size(); ++i) {
        ws.digits[i] = rng.below(radices_[i]);
    }
    if (spec_.kind == EstimatorKind::kRecursiveSquare && spec_.depth > 1) {
        const std::size_t n = a_.rows();
        Matrix g(n, n);
        for (std::size_t e = 0; e < pattern_.entries.size(); ++e) {
            const NonzeroEntry& entry = pattern_.entries[e];
            const std::size_t d = static_cast<std::size_t>(entry_digit_[e]);
            g.at(entry.row, entry.col) =
                sqrt_values_[e] * multiplier_table_[d][ws.digits[d]].real();
        }
        return recursive_estimate(g, spec_.depth - 1, rng) *
               recursive_estimate(g, spec_.depth - 1, rng);
    }
    return evaluate(ws.digits.data(), ws);
}

EstimatorSample PreparedEstimator::sample(Rng& rng, Workspace& ws) const {
    EstimatorSample out;
    out.value = sample_value(rng, ws);
    if (discrete()) {
        out.config.values = ws.digits;
        out.config.config_space_size = config_space_size_;
    }
    return out;
}

EstimatorStream::EstimatorStream(std::shared_ptr<const PreparedEstimator> prepared,
                                 std::uint64_t seed, std::uint64_t stream_index)
    : prepared_(std::move(prepared)),
      rng_(seed, stream_index),
      ws_(prepared_->make_workspace()),
      stream_index_(stream_index) {}

Scalar EstimatorStream::next() {
    ++draws_;
    return prepared_->sample_value(rng_, ws_);
}

EstimatorSample EstimatorStream::next_sample() {
    ++draws_;
    return prepared_->sample(rng_, ws_);
}

double EnumeratedMoments::variance() const {
    return std::max(0.0, second_moment - std::norm(mean));
}

EnumeratedMoments enumerate_expectation(const Matrix& a, const EstimatorSpec& spec) {
    const PreparedEstimator prep(a, spec);
    if (!prep.discrete()) {
        throw ParameterError("the " + to_cli_name(spec.kind) +
                             " estimator has no finite configuration space; "
                             "use sampling instead");
    }
    if (spec.kind == EstimatorKind::kRecursiveSquare && spec.depth != 1) {
        throw ParameterError("enumeration of the recursive estimator is "
                             "defined for depth 1 only; use sampling instead");
    }
    if (!prep.config_space_exact() ||
        prep.config_space_size() > kEnumerationGuard) {
        const std::string size_text = prep.config_space_exact()
            ? std::to_string(prep.config_space_size()) + " configurations"
            : "more configurations than fit in 64 bits";
        throw SizeGuardError("configuration space has " + size_text +
                             ", above the enumeration guard of 2^24; "
                             "use sampling instead");
    }

    PreparedEstimator::Workspace ws = prep.make_workspace();
    const std::vector<std::uint32_t>& radices = prep.radices();
    std::vector<std::uint32_t> digits(radices.size(), 0);
    const std::uint64_t total = prep.config_space_size();

    ComplexCompensatedSum mean_sum;
    CompensatedSum second_sum;
    for (std::uint64_t c = 0; c < total; ++c) {
        const Scalar value = prep.evaluate(digits.data(), ws);
        mean_sum.add(value);
        second_sum.add(std::norm(value));
        // Mixed-radix odometer, first digit fastest.
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (++digits[i] < radices[i]) break;
            digits[i] = 0;
        }
    }

    EnumeratedMoments out;
    const double denom = static_cast<double>(total);
    out.mean = mean_sum.value() / denom;
    out.second_moment = second_sum.value() / denom;
    out.config_space_size = total;
    return out;
}

}  // namespace permlab
