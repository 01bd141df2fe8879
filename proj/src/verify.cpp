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

#include "permlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "permlab/errors.hpp"
#include "permlab/exact.hpp"
#include "permlab/grassmann.hpp"
#include "permlab/matrix.hpp"
#include "permlab/rng.hpp"
#include "permlab/scalar.hpp"
#include "permlab/zeon.hpp"

namespace permlab {

namespace {

constexpr std::uint64_t kVerifySeed = 0x5eedf00dcafe01ULL;

/// |x - y| / max(1, |y|): relative error with an absolute floor so that
/// near-zero references stay meaningful.
double floored_relative(const Scalar& x, const Scalar& y) {
    return std::abs(x - y) / std::max(1.0, std::abs(y));
}

Matrix random_real_matrix(std::size_t n, Rng& rng, double lo, double hi) {
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a.at(i, j) = Scalar{lo + (hi - lo) * rng.uniform(), 0.0};
        }
    }
    return a;
}

CheckResult symbolic_permanent_exhaustive_2x2() {
    CheckResult out;
    out.name = "symbolic-permanent-2x2-exhaustive";
    const double values[] = {-1.0, 0.0, 1.0, 2.0};
    double worst = 0.0;
    int count = 0;
    for (double a00 : values)
        for (double a01 : values)
            for (double a10 : values)
                for (double a11 : values) {
                    Matrix a{{a00, a01}, {a10, a11}};
                    const Scalar sym =
                        berezin_top_coefficient(zeon_exp_quadratic(a));
                    const Scalar ref = per_naive(a).value.to_scalar();
                    worst = std::max(worst, floored_relative(sym, ref));
                    ++count;
                }
    out.max_residual = worst;
    out.ok = worst <= 1e-10;
    out.detail = std::to_string(count) + " matrices over {-1,0,1,2}, floored "
                 "relative tolerance 1e-10";
    return out;
}

CheckResult symbolic_permanent_random(int n) {
    CheckResult out;
    out.name = "symbolic-permanent-random-n" + std::to_string(n);
    Rng rng(kVerifySeed, static_cast<std::uint64_t>(n));
    double worst = 0.0;
    int produced = 0;
    while (produced < 50) {
        const Matrix a = random_real_matrix(static_cast<std::size_t>(n), rng,
                                            -1.0, 1.0);
        const Scalar ref = per_naive(a).value.to_scalar();
        // Reject near-singular draws so the relative error is well posed.
        if (std::abs(ref) < 1e-2) continue;
        const Scalar sym = berezin_top_coefficient(zeon_exp_quadratic(a));
        worst = std::max(worst, std::abs(sym - ref) / std::abs(ref));
        ++produced;
    }
    out.max_residual = worst;
    out.ok = worst <= 1e-10;
    out.detail = "50 random matrices with entries in [-1, 1], relative "
                 "tolerance 1e-10";
    return out;
}

CheckResult hs_identity_check(const HsChannel& channel, const Scalar& perturbation) {
    CheckResult out;
    out.name = "hs-identity-" + channel.name();
    Rng rng(kVerifySeed, 100 + static_cast<std::uint64_t>(channel.p) * 7 +
                             static_cast<std::uint64_t>(channel.kind));
    double worst = 0.0;
    bool all_ok = true;
    for (int k = 0; k < 100; ++k) {
        const double radius = 10.0 * std::sqrt(rng.uniform_pos());
        const double angle = 2.0 * 3.141592653589793238 * rng.uniform();
        const Scalar a{radius * std::cos(angle), radius * std::sin(angle)};
        const IdentityCheck check = verify_hs_identity(channel, a, perturbation);
        worst = std::max(worst, check.max_residual);
        all_ok = all_ok && check.ok;
    }
    out.max_residual = worst;
    out.ok = all_ok;
    out.detail = "100 random complex weights with |a| <= 10, both square-root "
                 "branches, coefficientwise tolerance 1e-12";
    return out;
}

ZeonElement random_integer_zeon(int modes, Rng& rng) {
    ZeonElement x(modes);
    const unsigned full = (1u << modes) - 1u;
    for (int t = 0; t < 6; ++t) {
        const unsigned starred = rng.below(full + 1);
        const unsigned unstarred = rng.below(full + 1);
        const double coeff = static_cast<double>(rng.below(7)) - 3.0;
        x += ZeonElement::monomial(modes, starred, unstarred, Scalar{coeff, 0.0});
    }
    return x;
}

CheckResult zeon_algebra_laws() {
    CheckResult out;
    out.name = "zeon-product-commutes-and-associates";
    Rng rng(kVerifySeed, 999);
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        const ZeonElement x = random_integer_zeon(3, rng);
        const ZeonElement y = random_integer_zeon(3, rng);
        const ZeonElement z = random_integer_zeon(3, rng);
        worst = std::max(worst, (x * y).max_coeff_distance(y * x));
        worst = std::max(worst, ((x * y) * z).max_coeff_distance(x * (y * z)));
    }
    out.max_residual = worst;
    out.ok = worst == 0.0;
    out.detail = "20 random integer-coefficient triples, exact equality";
    return out;
}

CheckResult grassmann_anticommutation() {
    CheckResult out;
    out.name = "grassmann-generators-anticommute";
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        const SingleModeGrassmann gi = SingleModeGrassmann::generator(
            static_cast<SingleModeGrassmann::Generator>(i));
        worst = std::max(
            worst, (gi * gi).max_coeff_distance(SingleModeGrassmann()));
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            const SingleModeGrassmann gj = SingleModeGrassmann::generator(
                static_cast<SingleModeGrassmann::Generator>(j));
            const SingleModeGrassmann lhs = gi * gj;
            const SingleModeGrassmann rhs = (gj * gi) * Scalar{-1.0, 0.0};
            worst = std::max(worst, lhs.max_coeff_distance(rhs));
        }
    }
    out.max_residual = worst;
    out.ok = worst == 0.0;
    out.detail = "all generator pairs, plus squares vanishing, exact";
    return out;
}

CheckResult composite_pair_ordering() {
    CheckResult out;
    out.name = "composite-pair-ordering";
    const SingleModeGrassmann product =
        SingleModeGrassmann::phi_star() * SingleModeGrassmann::phi();
    const SingleModeGrassmann canonical =
        SingleModeGrassmann::monomial(0b1111u, Scalar{1.0, 0.0});
    out.max_residual = product.max_coeff_distance(canonical);
    out.ok = out.max_residual == 0.0;
    out.detail = "(eta* xi*)(xi eta) equals the canonical full monomial with "
                 "coefficient +1, exact";
    return out;
}

CheckResult exact_algorithms_agree() {
    CheckResult out;
    out.name = "exact-algorithms-agree";
    Rng rng(kVerifySeed, 4242);
    double worst = 0.0;
    int count = 0;
    for (std::size_t n = 2; n <= 6; ++n) {
        for (int rep = 0; rep < 3; ++rep) {
            const Matrix a = random_real_matrix(n, rng, -1.0, 1.0);
            const Scalar ref = per_naive(a).value.to_scalar();
            worst = std::max(worst, floored_relative(
                per_ryser(a).value.to_scalar(), ref));
            worst = std::max(worst, floored_relative(
                per_glynn(a).value.to_scalar(), ref));
            worst = std::max(worst, floored_relative(
                per_gauge_z2_full(a).value.to_scalar(), ref));
            worst = std::max(worst, floored_relative(
                per_gauge_zp_full(a, 3).value.to_scalar(), ref));
            ++count;
        }
    }
    out.max_residual = worst;
    out.ok = worst <= 1e-10;
    out.detail = std::to_string(count) + " random matrices at n in 2..6, all "
                 "exact algorithms vs the permutation sum, floored relative "
                 "tolerance 1e-10";
    return out;
}

}  // namespace

bool VerifyReport::all_ok() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.ok; });
}

std::string VerifyReport::first_failure() const {
    for (const CheckResult& c : checks) {
        if (!c.ok) return c.name;
    }
    return "";
}

VerifyReport run_verification(const VerifyOptions& options) {
    if (options.max_n < 2 || options.max_n > 4) {
        throw ParameterError("symbolic permanent checks support n in 2..4");
    }
    if (!options.fault.empty() && options.fault != "omega-table") {
        throw ParameterError("unknown fault tag '" + options.fault +
                             "' (supported: omega-table)");
    }
    const Scalar perturbation = options.fault == "omega-table"
        ? Scalar{1e-3, 0.0}
        : Scalar{0.0, 0.0};

    VerifyReport report;
    report.checks.push_back(symbolic_permanent_exhaustive_2x2());
    for (int n = 3; n <= options.max_n; ++n) {
        report.checks.push_back(symbolic_permanent_random(n));
    }

    HsChannel channel;
    channel.kind = HsChannel::Kind::density_z2;
    report.checks.push_back(hs_identity_check(channel, Scalar{0.0, 0.0}));
    for (int p = 2; p <= 5; ++p) {
        channel.kind = HsChannel::Kind::zp;
        channel.p = p;
        report.checks.push_back(hs_identity_check(channel, perturbation));
    }
    for (int p = 2; p <= 5; ++p) {
        channel.kind = HsChannel::Kind::pairing_zp;
        channel.p = p;
        report.checks.push_back(hs_identity_check(channel, perturbation));
    }
    channel.kind = HsChannel::Kind::zeon_composite_z2;
    channel.p = 2;
    report.checks.push_back(hs_identity_check(channel, Scalar{0.0, 0.0}));

    report.checks.push_back(zeon_algebra_laws());
    report.checks.push_back(grassmann_anticommutation());
    report.checks.push_back(composite_pair_ordering());
    report.checks.push_back(exact_algorithms_agree());
    return report;
}

}  // namespace permlab
