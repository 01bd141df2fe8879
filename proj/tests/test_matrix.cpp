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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "permlab/errors.hpp"
#include "permlab/matrix.hpp"

using namespace permlab;

TEST_CASE("construction and accessors") {
    Matrix a(2, 3);
    CHECK(a.rows() == 2);
    CHECK(a.cols() == 3);
    CHECK_FALSE(a.square());
    CHECK(a.at(1, 2) == Scalar{0.0, 0.0});

    Matrix b{{1, 2}, {3, 4}};
    CHECK(b.square());
    CHECK(b.at(0, 1) == Scalar{2.0, 0.0});
    CHECK(b.at(1, 0) == Scalar{3.0, 0.0});

    CHECK(Matrix::identity(3).at(2, 2) == Scalar{1.0, 0.0});
    CHECK(Matrix::identity(3).at(0, 1) == Scalar{0.0, 0.0});
    CHECK(Matrix::constant(2, 2, Scalar{5, 1}).at(1, 1) == Scalar{5.0, 1.0});
}

TEST_CASE("ragged literal rows are rejected") {
    CHECK_THROWS_AS((Matrix{{1, 2}, {3}}), ShapeError);
}

TEST_CASE("non-finite entries are rejected") {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<Scalar> data{Scalar{1, 0}, Scalar{inf, 0}, Scalar{0, 0}, Scalar{1, 0}};
    CHECK_THROWS_AS(Matrix(2, 2, data), DomainError);
}

TEST_CASE("real and nonnegative predicates") {
    Matrix real{{1, -2}, {0, 3}};
    CHECK(real.is_real());
    CHECK_FALSE(real.is_nonnegative_real());

    Matrix nonneg{{1, 0}, {2, 3}};
    CHECK(nonneg.is_nonnegative_real());

    Matrix complex_entry(1, 1, {Scalar{1.0, 0.5}});
    CHECK_FALSE(complex_entry.is_real());
    CHECK(complex_entry.max_abs() == doctest::Approx(std::abs(Scalar{1.0, 0.5})));
}

TEST_CASE("nonzeros walks entries in row-major order") {
    Matrix a{{0, 5}, {7, 0}};
    NonzeroPattern p = nonzeros(a);
    REQUIRE(p.size() == 2);
    CHECK(p.entries[0].row == 0);
    CHECK(p.entries[0].col == 1);
    CHECK(p.entries[0].value == Scalar{5.0, 0.0});
    CHECK(p.entries[1].row == 1);
    CHECK(p.entries[1].col == 0);
    CHECK(p.rows == 2);
    CHECK(p.cols == 2);
}

TEST_CASE("text format: comments, blank lines, negative values") {
    Matrix a = parse_matrix_text("# header\n1 -2.5\n\n3e0 4\n");
    CHECK(a.rows() == 2);
    CHECK(a.at(0, 1) == Scalar{-2.5, 0.0});
    CHECK(a.at(1, 0) == Scalar{3.0, 0.0});
}

TEST_CASE("text format: errors carry a 1-based line number") {
    try {
        parse_matrix_text("1 2\n3 oops\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }

    try {
        parse_matrix_text("1 2\n3\n");
        FAIL("expected ragged row rejection");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }

    CHECK_THROWS_AS(parse_matrix_text("   \n# nothing\n"), ParseError);
}

TEST_CASE("json format: with and without imaginary part") {
    Matrix a = parse_matrix_json(R"({"re": [[1, 2], [3, 4]]})");
    CHECK(a.at(1, 1) == Scalar{4.0, 0.0});
    CHECK(a.is_real());

    Matrix b = parse_matrix_json(
        R"({"re": [[0, 1], [1, 0]], "im": [[1, 0], [0, -1]]})");
    CHECK(b.at(0, 0) == Scalar{0.0, 1.0});
    CHECK(b.at(1, 1) == Scalar{0.0, -1.0});

    CHECK_THROWS_AS(parse_matrix_json(R"({"im": [[1]]})"), ParseError);
    CHECK_THROWS_AS(parse_matrix_json(R"({"re": [[1], [2, 3]]})"), ParseError);
    CHECK_THROWS_AS(
        parse_matrix_json(R"({"re": [[1, 2]], "im": [[1, 2], [3, 4]]})"),
        ParseError);
}

TEST_CASE("load_matrix sniffs the format") {
    CHECK(load_matrix("1 2\n3 4\n") == load_matrix(R"({"re": [[1,2],[3,4]]})"));
    CHECK_THROWS_AS(load_matrix(""), ParseError);
    CHECK_THROWS_AS(load_matrix("{broken"), ParseError);
}
