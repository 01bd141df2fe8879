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

#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "permlab/driver.hpp"
#include "permlab/errors.hpp"
#include "permlab/estimators.hpp"
#include "permlab/exact.hpp"
#include "permlab/matrix.hpp"
#include "permlab/scheme.hpp"

namespace {

using namespace permlab;

std::uint64_t parse_seed(const std::string& text) {
    if (text == "random") {
        std::random_device rd;
        return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    try {
        std::size_t pos = 0;
        const unsigned long long value = std::stoull(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing characters");
        return value;
    } catch (const std::exception&) {
        throw ParameterError("seed must be an unsigned integer or 'random', got '" +
                             text + "'");
    }
}

std::uint64_t parse_positive_u64(const std::string& text, const char* what) {
    try {
        std::size_t pos = 0;
        const unsigned long long value = std::stoull(text, &pos);
        if (pos != text.size() || value == 0) throw std::invalid_argument("bad");
        return value;
    } catch (const std::exception&) {
        throw ParameterError(std::string(what) + " must be a positive integer, got '" +
                             text + "'");
    }
}

void parse_n_range(const std::string& text, std::uint64_t& low, std::uint64_t& high) {
    const std::size_t dots = text.find("..");
    if (dots == std::string::npos) {
        low = high = parse_positive_u64(text, "n range");
        return;
    }
    low = parse_positive_u64(text.substr(0, dots), "n range start");
    high = parse_positive_u64(text.substr(dots + 2), "n range end");
    if (high < low) {
        throw ParameterError("n range end " + std::to_string(high) +
                             " is below its start " + std::to_string(low));
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t at = text.find(sep, start);
        if (at == std::string::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, at - start));
        start = at + 1;
    }
}

/// Parse one side of --compare: an estimator tag with optional parameters,
/// e.g. "gauge:p=3" or "recursive:depth=1".
EstimatorSpec parse_compare_spec(const std::string& text) {
    const std::vector<std::string> parts = split(text, ':');
    EstimatorSpec spec;
    spec.kind = estimator_from_cli_name(parts[0]);
    if (spec.kind == EstimatorKind::kCustomScheme) {
        throw ParameterError("--compare does not take custom schemes; run two "
                             "`variance --alg custom --scheme ...` invocations");
    }
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const std::size_t eq = parts[i].find('=');
        if (eq == std::string::npos) {
            throw ParameterError("--compare parameter '" + parts[i] +
                                 "' is not of the form key=value");
        }
        const std::string key = parts[i].substr(0, eq);
        const std::string value = parts[i].substr(eq + 1);
        if (key == "p") {
            spec.p = static_cast<int>(parse_positive_u64(value, "p"));
        } else if (key == "depth") {
            spec.depth = static_cast<int>(parse_positive_u64(value, "depth"));
        } else {
            throw ParameterError("--compare parameter '" + key +
                                 "' is not recognized (expected p or depth)");
        }
    }
    return spec;
}

void emit_report(const RunReport& report, const std::string& mode) {
    if (mode == "text") {
        std::cout << report.to_text();
    } else {
        std::cout << report.to_json() << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"permlab: exact matrix permanents, unbiased stochastic "
                 "estimators, exact variance enumeration, and symbolic "
                 "identity verification"};
    app.require_subcommand(1);

    // ---- exact ----
    auto* cmd_exact = app.add_subcommand("exact", "compute a permanent exactly");
    std::string exact_alg = "glynn";
    std::string exact_input;
    std::string exact_output = "json";
    int exact_p = 2;
    int exact_threads = 0;
    bool exact_override = false;
    cmd_exact->add_option("--alg", exact_alg, "algorithm")
        ->check(CLI::IsMember({"naive", "ryser", "glynn", "gauge-z2", "gauge-zp"}))
        ->capture_default_str();
    cmd_exact->add_option("--p", exact_p, "root order for gauge-zp")
        ->capture_default_str();
    cmd_exact->add_option("--input", exact_input, "matrix file, or - for stdin")
        ->required();
    cmd_exact->add_option("--output", exact_output, "report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd_exact->add_option("--threads", exact_threads,
                          "worker threads (0 = hardware)")
        ->capture_default_str();
    cmd_exact->add_flag("--override-size-guard", exact_override,
                        "run past the desk-scale size guards");

    // ---- estimate ----
    auto* cmd_estimate =
        app.add_subcommand("estimate", "estimate a permanent by sampling");
    std::string est_alg = "gg";
    std::string est_input;
    std::string est_output = "json";
    std::string est_scheme;
    std::string est_seed = std::to_string(kDefaultSeed);
    int est_p = 2;
    int est_depth = 1;
    std::uint64_t est_samples = 100000;
    double est_epsilon = 0.0;
    double est_confidence = 0.95;
    std::uint32_t est_streams = 0;
    cmd_estimate->add_option("--alg", est_alg, "estimator")
        ->check(CLI::IsMember({"gg", "kkll", "custom", "pairing", "gauge",
                               "recursive", "lu-mc", "svd-mc"}))
        ->capture_default_str();
    cmd_estimate->add_option("--p", est_p, "root order for kkll/pairing/gauge")
        ->capture_default_str();
    cmd_estimate->add_option("--scheme", est_scheme,
                             "per-entry channel scheme (JSON file, or - for stdin)");
    cmd_estimate->add_option("--samples", est_samples, "total sample budget")
        ->capture_default_str();
    cmd_estimate->add_option("--epsilon", est_epsilon,
                             "stop once the half-width is below epsilon*|mean|")
        ->capture_default_str();
    cmd_estimate->add_option("--confidence", est_confidence, "interval confidence")
        ->capture_default_str();
    cmd_estimate->add_option("--seed", est_seed, "RNG seed, or 'random'")
        ->capture_default_str();
    cmd_estimate->add_option("--streams", est_streams,
                             "independent sample streams (0 = hardware)")
        ->capture_default_str();
    cmd_estimate->add_option("--depth", est_depth, "recursion depth for recursive")
        ->capture_default_str();
    cmd_estimate->add_option("--input", est_input, "matrix file, or - for stdin")
        ->required();
    cmd_estimate->add_option("--output", est_output, "report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    // ---- variance ----
    auto* cmd_variance = app.add_subcommand(
        "variance", "enumerate an estimator's exact mean and variance");
    std::string var_alg = "gg";
    std::string var_input;
    std::string var_output = "json";
    std::string var_scheme;
    std::string var_compare;
    int var_p = 2;
    cmd_variance->add_option("--alg", var_alg, "estimator")
        ->check(CLI::IsMember({"gg", "kkll", "custom", "pairing", "gauge",
                               "recursive"}))
        ->capture_default_str();
    cmd_variance->add_option("--p", var_p, "root order for kkll/pairing/gauge")
        ->capture_default_str();
    cmd_variance->add_option("--scheme", var_scheme,
                             "per-entry channel scheme for --alg custom");
    cmd_variance->add_option(
        "--compare", var_compare,
        "two estimator tags 'alg[:p=N],alg[:p=N]'; reports their "
        "second-moment ratio (second / first)");
    cmd_variance->add_option("--input", var_input, "matrix file, or - for stdin")
        ->required();
    cmd_variance->add_option("--output", var_output, "report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    // ---- verify ----
    auto* cmd_verify = app.add_subcommand(
        "verify", "run the symbolic identity suite and the exact-algorithm "
                  "cross-checks");
    std::string verify_output = "json";
    std::string verify_fault;
    int verify_max_n = 4;
    cmd_verify->add_option("--max-n", verify_max_n,
                           "largest symbolic size to check (2..4)")
        ->capture_default_str();
    cmd_verify->add_option("--fault-inject", verify_fault,
                           "corrupt one internal table to prove the checks "
                           "can fail (supported: omega-table)");
    cmd_verify->add_option("--output", verify_output, "report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    // ---- bench ----
    auto* cmd_bench = app.add_subcommand(
        "bench", "time exact algorithms on seeded random 0-1 matrices");
    std::vector<std::string> bench_algs{"ryser", "glynn"};
    std::string bench_range = "10..14";
    std::string bench_seed = std::to_string(kDefaultSeed);
    std::string bench_output = "text";
    int bench_reps = 3;
    int bench_p = 2;
    int bench_threads = 0;
    bool bench_override = false;
    cmd_bench->add_option("--alg", bench_algs, "comma-separated algorithms")
        ->delimiter(',')
        ->capture_default_str();
    cmd_bench->add_option("--n-range", bench_range, "sizes A..B (or one size)")
        ->capture_default_str();
    cmd_bench->add_option("--reps", bench_reps, "repetitions per point")
        ->capture_default_str();
    cmd_bench->add_option("--seed", bench_seed, "matrix seed, or 'random'")
        ->capture_default_str();
    cmd_bench->add_option("--p", bench_p, "root order for gauge-zp")
        ->capture_default_str();
    cmd_bench->add_option("--threads", bench_threads,
                          "worker threads (0 = hardware)")
        ->capture_default_str();
    cmd_bench->add_flag("--override-size-guard", bench_override,
                        "run past the desk-scale size guards");
    cmd_bench->add_option("--output", bench_output, "report format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*cmd_exact) {
            const Matrix a = load_matrix_file(exact_input);
            ExactRunOptions options;
            options.algorithm = exact_algorithm_from_name(exact_alg);
            options.p = exact_p;
            options.threads = exact_threads;
            options.override_size_guard = exact_override;
            emit_report(run_exact(a, options), exact_output);
            return 0;
        }
        if (*cmd_estimate) {
            const Matrix a = load_matrix_file(est_input);
            EstimateRunOptions options;
            options.spec.kind = estimator_from_cli_name(est_alg);
            options.spec.p = est_p;
            options.spec.depth = est_depth;
            if (options.spec.kind == EstimatorKind::kCustomScheme) {
                if (est_scheme.empty()) {
                    throw ParameterError("--alg custom needs --scheme");
                }
                options.spec.scheme = load_scheme_file(est_scheme);
                options.scheme_path = est_scheme;
            }
            options.seed = parse_seed(est_seed);
            options.streams = est_streams;
            options.max_samples = est_samples;
            options.epsilon = est_epsilon;
            options.confidence = est_confidence;
            emit_report(run_estimate(a, options), est_output);
            return 0;
        }
        if (*cmd_variance) {
            const Matrix a = load_matrix_file(var_input);
            if (!var_compare.empty()) {
                const std::vector<std::string> sides = split(var_compare, ',');
                if (sides.size() != 2) {
                    throw ParameterError(
                        "--compare needs exactly two comma-separated estimator "
                        "tags, got '" + var_compare + "'");
                }
                emit_report(run_variance_compare(a, parse_compare_spec(sides[0]),
                                                 parse_compare_spec(sides[1])),
                            var_output);
                return 0;
            }
            EstimatorSpec spec;
            spec.kind = estimator_from_cli_name(var_alg);
            spec.p = var_p;
            if (spec.kind == EstimatorKind::kCustomScheme) {
                if (var_scheme.empty()) {
                    throw ParameterError("--alg custom needs --scheme");
                }
                spec.scheme = load_scheme_file(var_scheme);
            }
            emit_report(run_variance(a, spec), var_output);
            return 0;
        }
        if (*cmd_verify) {
            VerifyOptions options;
            options.max_n = verify_max_n;
            options.fault = verify_fault;
            const RunReport report = run_verify(options);
            emit_report(report, verify_output);
            for (const CheckResult& check : report.checks) {
                if (!check.ok) return 1;
            }
            return 0;
        }
        if (*cmd_bench) {
            BenchRunOptions options;
            for (const std::string& name : bench_algs) {
                options.algorithms.push_back(exact_algorithm_from_name(name));
            }
            parse_n_range(bench_range, options.n_low, options.n_high);
            options.reps = bench_reps;
            options.seed = parse_seed(bench_seed);
            options.p = bench_p;
            options.threads = bench_threads;
            options.override_size_guard = bench_override;
            emit_report(run_bench(options), bench_output);
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InsufficientDataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const SizeGuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
    return 0;
}
