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

#include "permlab/zeon.hpp"

#include <cmath>

#include "permlab/errors.hpp"

namespace permlab {

namespace {

constexpr int kMaxModes = 4;

void check_modes(int modes) {
    if (modes < 1 || modes > kMaxModes)
        throw SizeGuardError("the symbolic table supports 1 to " + std::to_string(kMaxModes) +
                             " modes, got " + std::to_string(modes));
}

}  // namespace

ZeonElement::ZeonElement(int modes) : modes_(modes) {
    check_modes(modes);
    table_.assign(std::size_t{1} << (2 * modes), Scalar{0.0, 0.0});
}

ZeonElement ZeonElement::constant(int modes, const Scalar& c) {
    ZeonElement e(modes);
    e.coeff(0, 0) = c;
    return e;
}

ZeonElement ZeonElement::monomial(int modes, unsigned starred, unsigned unstarred,
                                  const Scalar& c) {
    ZeonElement e(modes);
    const unsigned full = (1u << modes) - 1u;
    if ((starred & ~full) || (unstarred & ~full))
        throw ParameterError("monomial subset out of range for mode count");
    e.coeff(starred, unstarred) = c;
    return e;
}

const Scalar& ZeonElement::coeff(unsigned starred, unsigned unstarred) const {
    return table_[(static_cast<std::size_t>(starred) << modes_) | unstarred];
}

Scalar& ZeonElement::coeff(unsigned starred, unsigned unstarred) {
    return table_[(static_cast<std::size_t>(starred) << modes_) | unstarred];
}

ZeonElement& ZeonElement::operator+=(const ZeonElement& o) {
    if (modes_ != o.modes_) throw ShapeError("mode count mismatch in symbolic sum");
    for (std::size_t i = 0; i < table_.size(); ++i) table_[i] += o.table_[i];
    return *this;
}

ZeonElement& ZeonElement::operator*=(const Scalar& c) {
    for (auto& t : table_) t *= c;
    return *this;
}

ZeonElement ZeonElement::operator*(const ZeonElement& o) const {
    if (modes_ != o.modes_) throw ShapeError("mode count mismatch in symbolic product");
    ZeonElement out(modes_);
    const unsigned side = 1u << modes_;
    for (unsigned s1 = 0; s1 < side; ++s1)
        for (unsigned u1 = 0; u1 < side; ++u1) {
            const Scalar& c1 = coeff(s1, u1);
            if (c1 == Scalar{0.0, 0.0}) continue;
            for (unsigned s2 = 0; s2 < side; ++s2) {
                if (s1 & s2) continue;  // repeated symbol annihilates
                for (unsigned u2 = 0; u2 < side; ++u2) {
                    if (u1 & u2) continue;
                    const Scalar& c2 = o.coeff(s2, u2);
                    if (c2 == Scalar{0.0, 0.0}) continue;
                    out.coeff(s1 | s2, u1 | u2) += c1 * c2;
                }
            }
        }
    return out;
}

double ZeonElement::max_coeff_distance(const ZeonElement& o) const {
    if (modes_ != o.modes_) throw ShapeError("mode count mismatch in symbolic comparison");
    double m = 0.0;
    for (std::size_t i = 0; i < table_.size(); ++i)
        m = std::max(m, std::abs(table_[i] - o.table_[i]));
    return m;
}

ZeonElement operator+(ZeonElement a, const ZeonElement& b) { return a += b; }
ZeonElement operator*(ZeonElement a, const Scalar& c) { return a *= c; }
ZeonElement operator*(const Scalar& c, ZeonElement a) { return a *= c; }

ZeonElement zeon_exp(const ZeonElement& x) {
    if (x.coeff(0, 0) != Scalar{0.0, 0.0})
        throw ParameterError("exp expects a nilpotent element (zero constant term)");
    ZeonElement result = ZeonElement::constant(x.modes(), Scalar{1.0, 0.0});
    ZeonElement term = ZeonElement::constant(x.modes(), Scalar{1.0, 0.0});
    // Each power adds at least one starred symbol, so the series stops after
    // `modes` factors.
    for (int k = 1; k <= x.modes(); ++k) {
        term = term * x;
        term *= Scalar{1.0 / k, 0.0};
        result += term;
    }
    return result;
}

ZeonElement zeon_exp_quadratic(const Matrix& a) {
    if (!a.square())
        throw ShapeError("quadratic form requires a square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    const int n = static_cast<int>(a.rows());
    check_modes(n);
    ZeonElement q(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q.coeff(1u << i, 1u << j) = a.at(i, j);
    return zeon_exp(q);
}

Scalar berezin_top_coefficient(const ZeonElement& x) {
    const unsigned full = (1u << x.modes()) - 1u;
    return x.coeff(full, full);
}

}  // namespace permlab
