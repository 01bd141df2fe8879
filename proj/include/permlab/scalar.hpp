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

#include <cmath>
#include <complex>
#include <cstdlib>

namespace permlab {

/// Every numeric value in the library is a complex double.  Real data is the
/// special case im == 0; routines that require real input check exactly that.
using Scalar = std::complex<double>;

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const Scalar& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// True when the value has an exactly zero imaginary part.
inline bool is_real(const Scalar& z) { return z.imag() == 0.0; }

/// A product of many factors kept as mantissa * 2^exponent so that long pivot
/// or entry products can neither overflow nor underflow a double.  The
/// mantissa is renormalized after every multiply: |mantissa| in [1,2), except
/// for the exact zero which is stored as (0, 0).
struct ScaledValue {
    Scalar mantissa{0.0, 0.0};
    int exponent = 0;

    static ScaledValue zero() { return ScaledValue{}; }
    static ScaledValue one() { return ScaledValue{Scalar{1.0, 0.0}, 0}; }

    static ScaledValue from(const Scalar& v) {
        ScaledValue s{v, 0};
        s.normalize();
        return s;
    }

    bool is_zero() const { return mantissa == Scalar{0.0, 0.0}; }

    /// Multiply by a plain scalar.  The factor is normalized first so the
    /// intermediate product stays within [1,4) in magnitude.
    ScaledValue& operator*=(const Scalar& f) { return (*this) *= ScaledValue::from(f); }

    ScaledValue& operator*=(const ScaledValue& o) {
        if (is_zero() || o.is_zero()) {
            mantissa = Scalar{0.0, 0.0};
            exponent = 0;
            return *this;
        }
        mantissa *= o.mantissa;
        exponent += o.exponent;
        normalize();
        return *this;
    }

    ScaledValue& negate() {
        mantissa = -mantissa;
        return *this;
    }

    /// |value|^2, still in scaled form (mantissa is real).
    ScaledValue squared_norm() const {
        if (is_zero()) return zero();
        ScaledValue s{Scalar{std::norm(mantissa), 0.0}, 2 * exponent};
        s.normalize();
        return s;
    }

    /// Collapse to a complex double.  Exact whenever the final exponent keeps
    /// the value inside the normal double range; otherwise rounds to
    /// 0 / +-inf like ldexp does.
    Scalar to_scalar() const {
        return Scalar{std::ldexp(mantissa.real(), exponent),
                      std::ldexp(mantissa.imag(), exponent)};
    }

    /// Real part of to_scalar(); handy for real-valued results.
    double to_double() const { return std::ldexp(mantissa.real(), exponent); }

    void normalize() {
        if (mantissa == Scalar{0.0, 0.0}) {
            exponent = 0;
            return;
        }
        // ilogb(|m|) = floor(log2 |m|), so dividing by 2^e lands |m| in [1,2).
        int e = std::ilogb(std::abs(mantissa));
        if (e != 0) {
            mantissa = Scalar{std::ldexp(mantissa.real(), -e), std::ldexp(mantissa.imag(), -e)};
            exponent += e;
        }
    }
};

inline ScaledValue operator*(ScaledValue a, const ScaledValue& b) { return a *= b; }
inline ScaledValue operator*(ScaledValue a, const Scalar& f) { return a *= f; }

/// Neumaier-compensated accumulator for long alternating sums.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    double value() const { return sum + comp; }
};

/// Compensated accumulator for complex sums (componentwise Neumaier).
struct ComplexCompensatedSum {
    CompensatedSum re, im;

    void add(const Scalar& z) {
        re.add(z.real());
        im.add(z.imag());
    }

    Scalar value() const { return Scalar{re.value(), im.value()}; }
};

}  // namespace permlab
