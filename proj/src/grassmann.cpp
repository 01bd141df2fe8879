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

#include "permlab/grassmann.hpp"

#include <bit>
#include <cmath>
#include <vector>

#include "permlab/errors.hpp"
#include "permlab/rng.hpp"
#include "permlab/zeon.hpp"

namespace permlab {

namespace {

constexpr double kIdentityTol = 1e-12;

/// Transposition count for merging two ascending generator lists: pairs
/// (x in a, y in b) with x > y.
int merge_inversions(unsigned a, unsigned b) {
    int inv = 0;
    for (unsigned y = 0; y < 4; ++y)
        if ((b >> y) & 1u) inv += std::popcount(a >> (y + 1));
    return inv;
}

}  // namespace

SingleModeGrassmann SingleModeGrassmann::constant(const Scalar& c) {
    SingleModeGrassmann e;
    e.c_[0] = c;
    return e;
}

SingleModeGrassmann SingleModeGrassmann::generator(Generator g) {
    SingleModeGrassmann e;
    e.c_[1u << g] = Scalar{1.0, 0.0};
    return e;
}

SingleModeGrassmann SingleModeGrassmann::monomial(unsigned mask, const Scalar& c) {
    if (mask > 15u) throw ParameterError("generator mask out of range");
    SingleModeGrassmann e;
    e.c_[mask] = c;
    return e;
}

SingleModeGrassmann& SingleModeGrassmann::operator+=(const SingleModeGrassmann& o) {
    for (unsigned m = 0; m < 16; ++m) c_[m] += o.c_[m];
    return *this;
}

SingleModeGrassmann& SingleModeGrassmann::operator*=(const Scalar& s) {
    for (auto& c : c_) c *= s;
    return *this;
}

SingleModeGrassmann SingleModeGrassmann::operator*(const SingleModeGrassmann& o) const {
    SingleModeGrassmann out;
    for (unsigned ma = 0; ma < 16; ++ma) {
        if (c_[ma] == Scalar{0.0, 0.0}) continue;
        for (unsigned mb = 0; mb < 16; ++mb) {
            if (ma & mb) continue;  // repeated generator annihilates
            if (o.c_[mb] == Scalar{0.0, 0.0}) continue;
            const double sign = (merge_inversions(ma, mb) % 2 == 0) ? 1.0 : -1.0;
            out.c_[ma | mb] += sign * c_[ma] * o.c_[mb];
        }
    }
    return out;
}

double SingleModeGrassmann::max_coeff_distance(const SingleModeGrassmann& o) const {
    double m = 0.0;
    for (unsigned i = 0; i < 16; ++i) m = std::max(m, std::abs(c_[i] - o.c_[i]));
    return m;
}

SingleModeGrassmann SingleModeGrassmann::phi() {
    return generator(kXi) * generator(kEta);
}

SingleModeGrassmann SingleModeGrassmann::phi_star() {
    return generator(kEtaStar) * generator(kXiStar);
}

SingleModeGrassmann operator+(SingleModeGrassmann a, const SingleModeGrassmann& b) {
    return a += b;
}
SingleModeGrassmann operator*(SingleModeGrassmann a, const Scalar& s) { return a *= s; }
SingleModeGrassmann operator*(const Scalar& s, SingleModeGrassmann a) { return a *= s; }

SingleModeGrassmann grassmann_exp(const SingleModeGrassmann& x) {
    if (x.coeff(0) != Scalar{0.0, 0.0})
        throw ParameterError("exp expects a nilpotent element (zero constant term)");
    SingleModeGrassmann result = SingleModeGrassmann::constant(Scalar{1.0, 0.0});
    SingleModeGrassmann term = SingleModeGrassmann::constant(Scalar{1.0, 0.0});
    for (int k = 1; k <= 4; ++k) {
        term = term * x;
        term *= Scalar{1.0 / k, 0.0};
        result += term;
    }
    return result;
}

std::string HsChannel::name() const {
    switch (kind) {
        case Kind::density_z2: return "density-z2";
        case Kind::zp: return "zp(p=" + std::to_string(p) + ")";
        case Kind::pairing_zp: return "pairing-zp(p=" + std::to_string(p) + ")";
        case Kind::zeon_composite_z2: return "zeon-composite-z2";
    }
    return "?";
}

namespace {

/// Left side common to all four channels: exp(a * phi* * phi) in the
/// appropriate algebra.
SingleModeGrassmann lhs_grassmann(const Scalar& a) {
    SingleModeGrassmann quad = SingleModeGrassmann::phi_star() * SingleModeGrassmann::phi();
    return grassmann_exp(quad * a);
}

double residual_density_z2(const Scalar& root) {
    const SingleModeGrassmann lhs = lhs_grassmann(root * root);
    const SingleModeGrassmann xi_pair =
        SingleModeGrassmann::generator(SingleModeGrassmann::kXiStar) *
        SingleModeGrassmann::generator(SingleModeGrassmann::kXi);
    const SingleModeGrassmann eta_pair =
        SingleModeGrassmann::generator(SingleModeGrassmann::kEtaStar) *
        SingleModeGrassmann::generator(SingleModeGrassmann::kEta);
    SingleModeGrassmann rhs;
    for (double s : {1.0, -1.0}) {
        Scalar w = s * root;
        rhs += grassmann_exp(xi_pair * w) * grassmann_exp(eta_pair * w);
    }
    rhs *= Scalar{0.5, 0.0};
    return lhs.max_coeff_distance(rhs);
}

std::vector<Scalar> perturbed_roots(int p, const Scalar& perturbation) {
    std::vector<Scalar> omega = roots_of_unity(p);
    for (std::size_t k = 1; k < omega.size(); ++k) omega[k] += perturbation;
    return omega;
}

double residual_zp(const Scalar& root, int p, const Scalar& perturbation) {
    const SingleModeGrassmann lhs = lhs_grassmann(root * root);
    const SingleModeGrassmann xi_pair =
        SingleModeGrassmann::generator(SingleModeGrassmann::kXiStar) *
        SingleModeGrassmann::generator(SingleModeGrassmann::kXi);
    const SingleModeGrassmann eta_pair =
        SingleModeGrassmann::generator(SingleModeGrassmann::kEtaStar) *
        SingleModeGrassmann::generator(SingleModeGrassmann::kEta);
    const auto omega = perturbed_roots(p, perturbation);
    SingleModeGrassmann rhs;
    for (int q = 1; q <= p; ++q) {
        const Scalar wq = omega[static_cast<std::size_t>(q % p)];
        const Scalar wq_inv = omega[static_cast<std::size_t>((p - q % p) % p)];
        rhs += grassmann_exp(xi_pair * (wq * root) + eta_pair * (wq_inv * root));
    }
    rhs *= Scalar{1.0 / p, 0.0};
    return lhs.max_coeff_distance(rhs);
}

double residual_pairing_zp(const Scalar& root, int p, const Scalar& perturbation) {
    const SingleModeGrassmann lhs = lhs_grassmann(root * root);
    const SingleModeGrassmann ps = SingleModeGrassmann::phi_star();
    const SingleModeGrassmann ph = SingleModeGrassmann::phi();
    const auto omega = perturbed_roots(p, perturbation);
    SingleModeGrassmann rhs;
    for (int q = 1; q <= p; ++q) {
        const Scalar wq = omega[static_cast<std::size_t>(q % p)];
        const Scalar wq_inv = omega[static_cast<std::size_t>((p - q % p) % p)];
        rhs += grassmann_exp(ps * (wq * root)) * grassmann_exp(ph * (wq_inv * root));
    }
    rhs *= Scalar{1.0 / p, 0.0};
    return lhs.max_coeff_distance(rhs);
}

/// Two-point decoupling with a commuting (even) auxiliary pair.  Modeled in
/// the two-mode commuting nilpotent algebra: mode 0 plays mu, mode 1 plays
/// nu, and phi* phi = (mu* nu*) (mu nu) has no ordering sign at all.
double residual_zeon_composite(const Scalar& root) {
    const Scalar a = root * root;
    const ZeonElement top = ZeonElement::monomial(2, 0b11u, 0b11u, Scalar{1.0, 0.0});
    const ZeonElement lhs = zeon_exp(top * a);
    const ZeonElement mu_pair = ZeonElement::monomial(2, 0b01u, 0b01u, Scalar{1.0, 0.0});
    const ZeonElement nu_pair = ZeonElement::monomial(2, 0b10u, 0b10u, Scalar{1.0, 0.0});
    ZeonElement rhs(2);
    for (double s : {1.0, -1.0}) {
        Scalar w = s * root;
        rhs += zeon_exp(mu_pair * w) * zeon_exp(nu_pair * w);
    }
    rhs *= Scalar{0.5, 0.0};
    return lhs.max_coeff_distance(rhs);
}

}  // namespace

IdentityCheck verify_hs_identity(const HsChannel& channel, const Scalar& a,
                                 const Scalar& root_table_perturbation) {
    if ((channel.kind == HsChannel::Kind::zp || channel.kind == HsChannel::Kind::pairing_zp) &&
        channel.p < 2)
        throw ParameterError("root order p must be >= 2, got " + std::to_string(channel.p));

    const Scalar principal = std::sqrt(a);
    IdentityCheck check;
    check.max_residual = 0.0;
    for (const Scalar& root : {principal, -principal}) {
        double r = 0.0;
        switch (channel.kind) {
            case HsChannel::Kind::density_z2: r = residual_density_z2(root); break;
            case HsChannel::Kind::zp:
                r = residual_zp(root, channel.p, root_table_perturbation);
                break;
            case HsChannel::Kind::pairing_zp:
                r = residual_pairing_zp(root, channel.p, root_table_perturbation);
                break;
            case HsChannel::Kind::zeon_composite_z2: r = residual_zeon_composite(root); break;
        }
        check.max_residual = std::max(check.max_residual, r);
    }
    check.ok = check.max_residual <= kIdentityTol;
    return check;
}

}  // namespace permlab
