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
#include <initializer_list>
#include <string>
#include <vector>

#include "permlab/scalar.hpp"

namespace permlab {

/// Dense row-major complex matrix.  Construction validates finiteness;
/// treat instances as immutable once built (streams and workers share
/// matrices by const reference).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries);
    /// Row-wise construction for literals in tests and examples.
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix constant(std::size_t rows, std::size_t cols, const Scalar& value);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    const Scalar* data() const { return data_.data(); }
    Scalar* data() { return data_.data(); }

    /// True when every entry has an exactly zero imaginary part.
    bool is_real() const;
    /// True when every entry is real with nonnegative real part.
    bool is_nonnegative_real() const;
    /// Largest |entry|.
    double max_abs() const;

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

/// One structurally nonzero entry.
struct NonzeroEntry {
    std::size_t row = 0;
    std::size_t col = 0;
    Scalar value{0.0, 0.0};
};

/// The nonzero entries of a matrix in deterministic row-major order.  Every
/// per-entry random channel (signs, phases) draws in exactly this order, so
/// the pattern doubles as the configuration-space coordinate system.
struct NonzeroPattern {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<NonzeroEntry> entries;

    std::size_t size() const { return entries.size(); }
};

/// Extract the nonzero pattern (row-major, exact zero test on both parts).
NonzeroPattern nonzeros(const Matrix& a);

/// Parse a matrix from text.  Two formats are accepted and sniffed from the
/// first non-space character:
///   * whitespace-separated real rows, '#' starting a comment line;
///   * a JSON document {"re": [[...]], "im": [[...]]} with "im" optional.
/// Throws ParseError (with a 1-based line number for the text format).
Matrix load_matrix(const std::string& source);

/// Parse only the plain-text format.
Matrix parse_matrix_text(const std::string& source);

/// Parse only the JSON format.
Matrix parse_matrix_json(const std::string& source);

/// Read a file (or stdin when path == "-") and parse it with load_matrix.
Matrix load_matrix_file(const std::string& path);

}  // namespace permlab
