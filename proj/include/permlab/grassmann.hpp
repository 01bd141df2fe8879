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

#include <array>
#include <string>

#include "permlab/scalar.hpp"

namespace permlab {

/// Element of the algebra generated by the four anticommuting symbols of a
/// single doubled mode: xi*, xi, eta*, eta (canonical order).  Coefficients
/// are stored for all 16 basis monomials, indexed by the generator bitmask;
/// multiplication tracks the transposition sign needed to merge two sorted
/// monomials.
class SingleModeGrassmann {
public:
    enum Generator { kXiStar = 0, kXi = 1, kEtaStar = 2, kEta = 3 };

    SingleModeGrassmann() { c_.fill(Scalar{0.0, 0.0}); }

    static SingleModeGrassmann constant(const Scalar& c);
    static SingleModeGrassmann generator(Generator g);
    /// Basis monomial for a generator mask, in canonical ascending order.
    static SingleModeGrassmann monomial(unsigned mask, const Scalar& c);

    const Scalar& coeff(unsigned mask) const { return c_[mask]; }
    Scalar& coeff(unsigned mask) { return c_[mask]; }

    SingleModeGrassmann& operator+=(const SingleModeGrassmann& o);
    SingleModeGrassmann& operator*=(const Scalar& s);
    SingleModeGrassmann operator*(const SingleModeGrassmann& o) const;

    double max_coeff_distance(const SingleModeGrassmann& o) const;

    /// The composite even pair: phi = xi * eta, phi* = eta* * xi*.  Built as
    /// products so the ordering convention lives in exactly one place.
    static SingleModeGrassmann phi();
    static SingleModeGrassmann phi_star();

private:
    std::array<Scalar, 16> c_;
};

SingleModeGrassmann operator+(SingleModeGrassmann a, const SingleModeGrassmann& b);
SingleModeGrassmann operator*(SingleModeGrassmann a, const Scalar& s);
SingleModeGrassmann operator*(const Scalar& s, SingleModeGrassmann a);

/// exp of a nilpotent element (zero constant term); truncates at degree 4.
SingleModeGrassmann grassmann_exp(const SingleModeGrassmann& x);

/// The decoupling channels whose single-mode identities the oracle verifies.
struct HsChannel {
    enum class Kind {
        density_z2,        ///< two-point sign average against xi*xi and eta*eta
        zp,                ///< p-th root-of-unity average against xi*xi and eta*eta
        pairing_zp,        ///< p-th root-of-unity average against the composite phi*, phi
        zeon_composite_z2  ///< two-point sign average with a commuting even pair
    };
    Kind kind = Kind::density_z2;
    int p = 2;  ///< root order for the zp channels

    std::string name() const;
};

struct IdentityCheck {
    bool ok = false;
    double max_residual = 0.0;
};

/// Expand both sides of the single-mode decoupling identity for weight `a`
/// and compare coefficient tables.  Both square-root branches are checked;
/// the identity must hold for either choice.  Residuals are compared against
/// a 1e-12 coefficientwise tolerance.
///
/// `root_table_perturbation` is added to every non-unit root of unity before
/// the right-hand-side average is formed; it exists so the verification
/// harness can prove the check actually detects a corrupted phase table
/// (pass zero for an honest check).
IdentityCheck verify_hs_identity(const HsChannel& channel, const Scalar& a,
                                 const Scalar& root_table_perturbation = Scalar{0.0, 0.0});

}  // namespace permlab
