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

#include "permlab/matrix.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "permlab/errors.hpp"

namespace permlab {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Scalar{0.0, 0.0}) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw ShapeError("entry count " + std::to_string(data_.size()) + " does not match " +
                         std::to_string(rows_) + "x" + std::to_string(cols_));
    for (const Scalar& z : data_)
        if (!is_finite(z)) throw DomainError("matrix entries must be finite");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw ShapeError("rows of unequal length");
        for (double v : r) data_.emplace_back(v, 0.0);
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar{1.0, 0.0};
    return m;
}

Matrix Matrix::constant(std::size_t rows, std::size_t cols, const Scalar& value) {
    Matrix m(rows, cols);
    for (auto& z : m.data_) z = value;
    return m;
}

bool Matrix::is_real() const {
    for (const Scalar& z : data_)
        if (z.imag() != 0.0) return false;
    return true;
}

bool Matrix::is_nonnegative_real() const {
    for (const Scalar& z : data_)
        if (z.imag() != 0.0 || z.real() < 0.0) return false;
    return true;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (const Scalar& z : data_) m = std::max(m, std::abs(z));
    return m;
}

NonzeroPattern nonzeros(const Matrix& a) {
    NonzeroPattern p;
    p.rows = a.rows();
    p.cols = a.cols();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Scalar& z = a.at(i, j);
            if (z.real() != 0.0 || z.imag() != 0.0) p.entries.push_back({i, j, z});
        }
    return p;
}

namespace {

double parse_number(const std::string& token, int line_no) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    double value = 0.0;
    auto [next, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || next != end)
        throw ParseError("invalid number '" + token + "'", line_no);
    if (!std::isfinite(value))
        throw ParseError("non-finite value '" + token + "'", line_no);
    return value;
}

}  // namespace

Matrix parse_matrix_text(const std::string& source) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(source);
    std::string line;
    int line_no = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<double> row;
        std::string token;
        while (ls >> token) row.push_back(parse_number(token, line_no));
        if (row.empty()) continue;  // blank or comment-only line
        if (rows.empty())
            width = row.size();
        else if (row.size() != width)
            throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " +
                                 std::to_string(width),
                             line_no);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("no matrix rows found");
    std::vector<Scalar> entries;
    entries.reserve(rows.size() * width);
    for (const auto& r : rows)
        for (double v : r) entries.emplace_back(v, 0.0);
    return Matrix(rows.size(), width, std::move(entries));
}

Matrix parse_matrix_json(const std::string& source) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(source);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("re"))
        throw ParseError("matrix document must be an object with a \"re\" field");

    auto read_plane = [](const nlohmann::json& plane,
                         const char* name) -> std::vector<std::vector<double>> {
        if (!plane.is_array()) throw ParseError(std::string("\"") + name + "\" must be an array of rows");
        std::vector<std::vector<double>> rows;
        for (const auto& r : plane) {
            if (!r.is_array()) throw ParseError(std::string("\"") + name + "\" rows must be arrays");
            std::vector<double> row;
            for (const auto& v : r) {
                if (!v.is_number()) throw ParseError(std::string("non-numeric entry in \"") + name + "\"");
                double d = v.get<double>();
                if (!std::isfinite(d)) throw ParseError(std::string("non-finite entry in \"") + name + "\"");
                row.push_back(d);
            }
            rows.push_back(std::move(row));
        }
        return rows;
    };

    auto re = read_plane(doc["re"], "re");
    if (re.empty()) throw ParseError("\"re\" has no rows");
    std::size_t width = re[0].size();
    for (const auto& r : re)
        if (r.size() != width) throw ParseError("\"re\" rows have unequal lengths");
    if (width == 0) throw ParseError("\"re\" rows are empty");

    std::vector<std::vector<double>> im;
    if (doc.contains("im")) {
        im = read_plane(doc["im"], "im");
        if (im.size() != re.size()) throw ParseError("\"im\" shape differs from \"re\"");
        for (const auto& r : im)
            if (r.size() != width) throw ParseError("\"im\" shape differs from \"re\"");
    }

    std::vector<Scalar> entries;
    entries.reserve(re.size() * width);
    for (std::size_t i = 0; i < re.size(); ++i)
        for (std::size_t j = 0; j < width; ++j)
            entries.emplace_back(re[i][j], im.empty() ? 0.0 : im[i][j]);
    return Matrix(re.size(), width, std::move(entries));
}

Matrix load_matrix(const std::string& source) {
    for (char c : source) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return parse_matrix_json(source);
        break;
    }
    return parse_matrix_text(source);
}

Matrix load_matrix_file(const std::string& path) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open file '" + path + "'");
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    return load_matrix(text);
}

}  // namespace permlab
