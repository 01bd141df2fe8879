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

/// Element of the commutative nilpotent algebra generated by n starred and n
/// unstarred symbols, each squaring to zero and all commuting.  A coefficient
/// is stored for every monomial, indexed by the pair
/// (starred subset, unstarred subset); the table has 4^n entries, n <= 4.
///
/// These are the "squares of anticommuting pairs": products of two odd
/// symbols commute with everything and vanish on repetition, which is
/// exactly the multiplication rule implemented here (disjoint subsets union,
/// overlapping subsets annihilate, no signs).
class ZeonElement {
public:
    explicit ZeonElement(int modes);

    static ZeonElement constant(int modes, const Scalar& c);
    /// Monomial: product of the starred symbols in `starred` and the
    /// unstarred symbols in `unstarred` (bitmasks over [0, modes)).
    static ZeonElement monomial(int modes, unsigned starred, unsigned unstarred, const Scalar& c);

    int modes() const { return modes_; }

    const Scalar& coeff(unsigned starred, unsigned unstarred) const;
    Scalar& coeff(unsigned starred, unsigned unstarred);

    ZeonElement& operator+=(const ZeonElement& o);
    ZeonElement& operator*=(const Scalar& c);
    ZeonElement operator*(const ZeonElement& o) const;

    bool operator==(const ZeonElement& o) const {
        return modes_ == o.modes_ && table_ == o.table_;
    }

    /// Largest |coefficient| of the difference; the distance used by the
    /// identity checks.
    double max_coeff_distance(const ZeonElement& o) const;

private:
    int modes_ = 0;
    std::vector<Scalar> table_;  // index = (starred << modes) | unstarred
};

ZeonElement operator+(ZeonElement a, const ZeonElement& b);
ZeonElement operator*(ZeonElement a, const Scalar& c);
ZeonElement operator*(const Scalar& c, ZeonElement a);

/// exp of an element with zero constant term (nilpotent, so the series
/// truncates at the mode count).
ZeonElement zeon_exp(const ZeonElement& x);

/// Expand exp(sum_ij a_ij * starred_i * unstarred_j) for an n x n matrix,
/// n <= 4.  The top coefficient of this element is the permanent.
ZeonElement zeon_exp_quadratic(const Matrix& a);

/// Coefficient of the full monomial (all starred symbols times all unstarred
/// symbols) — the nilpotent-integral analogue of extracting the permanent.
Scalar berezin_top_coefficient(const ZeonElement& x);

}  // namespace permlab
