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

#include <stdexcept>
#include <string>

namespace permlab {

/// Base class for all errors thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input text or document (matrix files, scheme files, ...).
/// `line` is 1-based when the offending line is known, -1 otherwise.
struct ParseError : Error {
    int line = -1;
    explicit ParseError(const std::string& msg, int line_no = -1)
        : Error(line_no > 0 ? "parse error at line " + std::to_string(line_no) + ": " + msg
                            : "parse error: " + msg),
          line(line_no) {}
};

/// Structurally invalid input (non-square matrix, dimension mismatch, ...).
struct ShapeError : Error {
    explicit ShapeError(const std::string& msg) : Error("shape error: " + msg) {}
};

/// A size guard tripped: the requested computation is too large for the
/// desk-scale envelope this library targets.  Guards can be overridden
/// explicitly by the caller.
struct SizeGuardError : Error {
    explicit SizeGuardError(const std::string& msg) : Error("size guard: " + msg) {}
};

/// Input outside an operation's mathematical domain (e.g. negative entries
/// where a nonnegative matrix is required, complex input to a real-only
/// routine).
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error("domain error: " + msg) {}
};

/// Invalid parameter value (p < 2, zero-sample stop rule, unknown tag, ...).
struct ParameterError : Error {
    explicit ParameterError(const std::string& msg) : Error("parameter error: " + msg) {}
};

/// An estimator configuration does not match the matrix it is applied to
/// (decoupling scheme covering the wrong entries, duplicate assignments, ...).
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("config error: " + msg) {}
};

/// An iterative routine failed to converge within its sweep budget.
struct ConvergenceError : Error {
    double residual = 0.0;
    explicit ConvergenceError(const std::string& msg, double res = 0.0)
        : Error("convergence error: " + msg), residual(res) {}
};

/// A statistic was requested from an accumulator with too few samples.
struct InsufficientDataError : Error {
    explicit InsufficientDataError(const std::string& msg)
        : Error("insufficient data: " + msg) {}
};

}  // namespace permlab
