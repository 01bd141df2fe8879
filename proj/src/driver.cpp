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

#include "permlab/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>
#include <utility>

#include <json.hpp>

#include "permlab/errors.hpp"
#include "permlab/rng.hpp"

namespace permlab {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double elapsed_ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void require_finite(double x, const char* field) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string("report field '") + field +
                          "' is not finite; the run exceeded double range");
    }
}

json scalar_to_json(const Scalar& z) {
    return json{{"re", z.real()}, {"im", z.imag()}};
}

Scalar scalar_from_json(const json& j) {
    return Scalar{j.at("re").get<double>(), j.at("im").get<double>()};
}

json enumerated_to_json(const EnumeratedReport& e) {
    return json{{"mean", scalar_to_json(e.mean)},
                {"second_moment", e.second_moment},
                {"variance", e.variance},
                {"config_space_size", e.config_space_size}};
}

EnumeratedReport enumerated_from_json(const json& j) {
    EnumeratedReport e;
    e.mean = scalar_from_json(j.at("mean"));
    e.second_moment = j.at("second_moment").get<double>();
    e.variance = j.at("variance").get<double>();
    e.config_space_size = j.at("config_space_size").get<std::uint64_t>();
    return e;
}

EnumeratedReport to_enumerated_report(const EnumeratedMoments& m) {
    EnumeratedReport e;
    e.mean = m.mean;
    e.second_moment = m.second_moment;
    e.variance = m.variance();
    e.config_space_size = m.config_space_size;
    return e;
}

std::uint32_t default_stream_count(std::uint32_t requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

ReportParameters estimate_parameters(const EstimateRunOptions& options) {
    ReportParameters params;
    const EstimatorKind kind = options.spec.kind;
    if (kind == EstimatorKind::kPhaseDeterminant ||
        kind == EstimatorKind::kPairing || kind == EstimatorKind::kGauge) {
        params.p = options.spec.p;
    }
    if (kind == EstimatorKind::kCustomScheme && !options.scheme_path.empty()) {
        params.scheme = options.scheme_path;
    }
    if (kind == EstimatorKind::kRecursiveSquare) {
        params.depth = options.spec.depth;
    }
    params.seed = options.seed;
    params.streams = default_stream_count(options.streams);
    if (options.epsilon > 0.0) params.epsilon = options.epsilon;
    params.confidence = options.confidence;
    return params;
}

}  // namespace

std::string RunReport::to_json() const {
    json doc;
    doc["schema"] = schema;
    doc["command"] = command;
    doc["algorithm"] = algorithm;
    doc["n"] = n;
    doc["m"] = m;

    json params = json::object();
    if (parameters.p) params["p"] = *parameters.p;
    if (parameters.scheme) params["scheme"] = *parameters.scheme;
    if (parameters.seed) params["seed"] = *parameters.seed;
    if (parameters.streams) params["streams"] = *parameters.streams;
    if (parameters.epsilon) {
        require_finite(*parameters.epsilon, "parameters.epsilon");
        params["epsilon"] = *parameters.epsilon;
    }
    if (parameters.confidence) {
        require_finite(*parameters.confidence, "parameters.confidence");
        params["confidence"] = *parameters.confidence;
    }
    if (parameters.depth) params["depth"] = *parameters.depth;
    if (parameters.threads) params["threads"] = *parameters.threads;
    doc["parameters"] = std::move(params);

    if (result) {
        require_finite(result->real(), "result.re");
        require_finite(result->imag(), "result.im");
        doc["result"] = scalar_to_json(*result);
    }
    if (std_error) {
        require_finite(*std_error, "std_error");
        doc["std_error"] = *std_error;
    }
    if (interval) {
        require_finite((*interval)[0], "interval.lo");
        require_finite((*interval)[1], "interval.hi");
        doc["interval"] = json::array({(*interval)[0], (*interval)[1]});
    }
    if (samples) doc["samples"] = *samples;
    if (terms) doc["terms"] = *terms;
    require_finite(elapsed_ms, "elapsed_ms");
    doc["elapsed_ms"] = elapsed_ms;
    doc["warnings"] = warnings;

    if (enumerated) {
        require_finite(enumerated->second_moment, "enumerated.second_moment");
        require_finite(enumerated->variance, "enumerated.variance");
        doc["enumerated"] = enumerated_to_json(*enumerated);
    }
    if (compare) {
        require_finite(compare->second_moment_ratio, "compare.second_moment_ratio");
        doc["compare"] = json{
            {"first_algorithm", compare->first_algorithm},
            {"second_algorithm", compare->second_algorithm},
            {"first", enumerated_to_json(compare->first)},
            {"second", enumerated_to_json(compare->second)},
            {"second_moment_ratio", compare->second_moment_ratio}};
    }
    if (!checks.empty()) {
        json rows = json::array();
        for (const CheckResult& c : checks) {
            require_finite(c.max_residual, "checks.max_residual");
            rows.push_back(json{{"name", c.name},
                                {"ok", c.ok},
                                {"max_residual", c.max_residual},
                                {"detail", c.detail}});
        }
        doc["checks"] = std::move(rows);
    }
    if (!bench.empty()) {
        json rows = json::array();
        for (const BenchRow& row : bench) {
            require_finite(row.median_ms, "bench.median_ms");
            require_finite(row.terms_per_second, "bench.terms_per_second");
            rows.push_back(json{{"algorithm", row.algorithm},
                                {"n", row.n},
                                {"median_ms", row.median_ms},
                                {"terms_per_second", row.terms_per_second}});
        }
        doc["bench"] = std::move(rows);
    }
    return doc.dump(2);
}

RunReport RunReport::from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& err) {
        throw ConfigError(std::string("run report is not valid JSON: ") + err.what());
    }
    try {
        RunReport r;
        r.schema = doc.at("schema").get<int>();
        r.command = doc.at("command").get<std::string>();
        r.algorithm = doc.at("algorithm").get<std::string>();
        r.n = doc.at("n").get<std::uint64_t>();
        r.m = doc.at("m").get<std::uint64_t>();
        const json& params = doc.at("parameters");
        if (params.contains("p")) r.parameters.p = params["p"].get<int>();
        if (params.contains("scheme")) r.parameters.scheme = params["scheme"].get<std::string>();
        if (params.contains("seed")) r.parameters.seed = params["seed"].get<std::uint64_t>();
        if (params.contains("streams")) r.parameters.streams = params["streams"].get<std::uint32_t>();
        if (params.contains("epsilon")) r.parameters.epsilon = params["epsilon"].get<double>();
        if (params.contains("confidence")) r.parameters.confidence = params["confidence"].get<double>();
        if (params.contains("depth")) r.parameters.depth = params["depth"].get<int>();
        if (params.contains("threads")) r.parameters.threads = params["threads"].get<int>();
        if (doc.contains("result")) r.result = scalar_from_json(doc["result"]);
        if (doc.contains("std_error")) r.std_error = doc["std_error"].get<double>();
        if (doc.contains("interval")) {
            r.interval = std::array<double, 2>{doc["interval"].at(0).get<double>(),
                                               doc["interval"].at(1).get<double>()};
        }
        if (doc.contains("samples")) r.samples = doc["samples"].get<std::uint64_t>();
        if (doc.contains("terms")) r.terms = doc["terms"].get<std::uint64_t>();
        r.elapsed_ms = doc.at("elapsed_ms").get<double>();
        r.warnings = doc.at("warnings").get<std::vector<std::string>>();
        if (doc.contains("enumerated")) r.enumerated = enumerated_from_json(doc["enumerated"]);
        if (doc.contains("compare")) {
            const json& c = doc["compare"];
            CompareReport cr;
            cr.first_algorithm = c.at("first_algorithm").get<std::string>();
            cr.second_algorithm = c.at("second_algorithm").get<std::string>();
            cr.first = enumerated_from_json(c.at("first"));
            cr.second = enumerated_from_json(c.at("second"));
            cr.second_moment_ratio = c.at("second_moment_ratio").get<double>();
            r.compare = std::move(cr);
        }
        if (doc.contains("checks")) {
            for (const json& row : doc["checks"]) {
                CheckResult c;
                c.name = row.at("name").get<std::string>();
                c.ok = row.at("ok").get<bool>();
                c.max_residual = row.at("max_residual").get<double>();
                c.detail = row.at("detail").get<std::string>();
                r.checks.push_back(std::move(c));
            }
        }
        if (doc.contains("bench")) {
            for (const json& row : doc["bench"]) {
                BenchRow b;
                b.algorithm = row.at("algorithm").get<std::string>();
                b.n = row.at("n").get<std::uint64_t>();
                b.median_ms = row.at("median_ms").get<double>();
                b.terms_per_second = row.at("terms_per_second").get<double>();
                r.bench.push_back(std::move(b));
            }
        }
        return r;
    } catch (const json::exception& err) {
        throw ConfigError(std::string("run report is missing required fields: ") +
                          err.what());
    }
}

std::string RunReport::to_text() const {
    std::ostringstream out;
    out << std::setprecision(15);
    out << "command:    " << command << "\n";
    out << "algorithm:  " << algorithm << "\n";
    if (n > 0) {
        out << "n:          " << n << "  (nonzeros: " << m << ")\n";
    }
    if (result) {
        out << "result:     " << result->real();
        if (result->imag() != 0.0) out << " + " << result->imag() << "i";
        out << "\n";
    }
    if (std_error) out << "std_error:  " << *std_error << "\n";
    if (interval) {
        out << "interval:   [" << (*interval)[0] << ", " << (*interval)[1] << "]";
        if (parameters.confidence) out << "  (" << *parameters.confidence << ")";
        out << "\n";
    }
    if (samples) out << "samples:    " << *samples << "\n";
    if (terms) out << "terms:      " << *terms << "\n";
    if (enumerated) {
        out << "enumerated mean:          " << enumerated->mean.real();
        if (enumerated->mean.imag() != 0.0)
            out << " + " << enumerated->mean.imag() << "i";
        out << "\n";
        out << "enumerated second moment: " << enumerated->second_moment << "\n";
        out << "enumerated variance:      " << enumerated->variance << "\n";
        out << "config space size:        " << enumerated->config_space_size << "\n";
    }
    if (compare) {
        out << "first  (" << compare->first_algorithm
            << ") second moment: " << compare->first.second_moment << "\n";
        out << "second (" << compare->second_algorithm
            << ") second moment: " << compare->second.second_moment << "\n";
        out << "second_moment_ratio: " << compare->second_moment_ratio << "\n";
    }
    if (!checks.empty()) {
        std::size_t width = 0;
        for (const CheckResult& c : checks) width = std::max(width, c.name.size());
        for (const CheckResult& c : checks) {
            out << (c.ok ? "PASS  " : "FAIL  ") << std::left
                << std::setw(static_cast<int>(width) + 2) << c.name << std::right
                << "max residual " << std::scientific << std::setprecision(3)
                << c.max_residual << std::defaultfloat << std::setprecision(15)
                << "\n";
        }
    }
    if (!bench.empty()) {
        out << std::left << std::setw(12) << "algorithm" << std::right
            << std::setw(6) << "n" << std::setw(16) << "median_ms"
            << std::setw(20) << "terms_per_second" << "\n";
        for (const BenchRow& row : bench) {
            out << std::left << std::setw(12) << row.algorithm << std::right
                << std::setw(6) << row.n << std::setw(16) << std::fixed
                << std::setprecision(3) << row.median_ms << std::setw(20)
                << std::scientific << std::setprecision(3)
                << row.terms_per_second << std::defaultfloat
                << std::setprecision(15) << "\n";
        }
    }
    for (const std::string& w : warnings) out << "warning: " << w << "\n";
    out << "elapsed_ms: " << elapsed_ms << "\n";
    return out.str();
}

RunReport run_exact(const Matrix& a, const ExactRunOptions& options) {
    const auto start = Clock::now();
    ExactOptions opts;
    opts.threads = options.threads;
    opts.override_size_guard = options.override_size_guard;

    ExactResult result;
    switch (options.algorithm) {
        case ExactAlgorithm::naive: result = per_naive(a, opts); break;
        case ExactAlgorithm::ryser: result = per_ryser(a, opts); break;
        case ExactAlgorithm::glynn: result = per_glynn(a, opts); break;
        case ExactAlgorithm::gauge_z2: result = per_gauge_z2_full(a, opts); break;
        case ExactAlgorithm::gauge_zp:
            result = per_gauge_zp_full(a, options.p, opts);
            break;
    }

    RunReport report;
    report.command = "exact";
    report.algorithm = to_string(options.algorithm);
    report.n = a.rows();
    report.m = nonzeros(a).entries.size();
    if (options.algorithm == ExactAlgorithm::gauge_zp) {
        report.parameters.p = options.p;
    }
    if (options.threads > 0) report.parameters.threads = options.threads;
    report.result = result.value.to_scalar();
    report.terms = result.terms_evaluated;
    const double imag_warn_floor =
        1e-9 * std::max(1.0, std::abs(result.value.to_scalar()));
    if (result.imag_residual > imag_warn_floor) {
        std::ostringstream msg;
        msg << "discarded imaginary residual " << std::scientific
            << std::setprecision(3) << result.imag_residual
            << " from the root-of-unity sum (real input)";
        report.warnings.push_back(msg.str());
    }
    report.elapsed_ms = elapsed_ms_since(start);
    return report;
}

RunReport run_estimate(const Matrix& a, const EstimateRunOptions& options) {
    const auto start = Clock::now();
    if (options.max_samples < 2) {
        throw ParameterError("sample budget must be at least 2");
    }
    if (options.epsilon < 0.0) {
        throw ParameterError("relative precision target must be nonnegative");
    }
    if (!(options.confidence > 0.0 && options.confidence < 1.0)) {
        throw ParameterError("confidence level must lie strictly inside (0, 1)");
    }

    const auto prepared = std::make_shared<const PreparedEstimator>(a, options.spec);
    const std::uint32_t stream_count = default_stream_count(options.streams);

    // Fixed per-stream budgets: earlier streams absorb the remainder, so the
    // schedule (and therefore every sample) depends only on the budget and
    // the stream count.
    std::vector<std::uint64_t> budget(stream_count, options.max_samples / stream_count);
    for (std::uint64_t w = 0; w < options.max_samples % stream_count; ++w) {
        budget[w] += 1;
    }

    std::vector<EstimatorStream> streams;
    streams.reserve(stream_count);
    for (std::uint32_t w = 0; w < stream_count; ++w) {
        streams.emplace_back(prepared, options.seed, w);
    }
    std::vector<RunningMoments> per_stream(stream_count);
    std::vector<std::uint64_t> drawn(stream_count, 0);

    const auto fold = [&]() {
        RunningMoments merged;
        for (const RunningMoments& m : per_stream) {
            merged = RunningMoments::merged(merged, m);
        }
        return merged;
    };

    RunningMoments merged;
    bool target_met = false;
    std::vector<double> checkpoint_half_widths;
    std::vector<std::uint64_t> checkpoint_counts;
    while (true) {
        bool drew_any = false;
        for (std::uint32_t w = 0; w < stream_count; ++w) {
            const std::uint64_t quota =
                std::min<std::uint64_t>(kCheckpointInterval, budget[w] - drawn[w]);
            for (std::uint64_t q = 0; q < quota; ++q) {
                per_stream[w].update(streams[w].next());
            }
            drawn[w] += quota;
            drew_any = drew_any || quota > 0;
        }
        if (!drew_any) break;
        merged = fold();
        if (merged.count() >= 2) {
            const IntervalEstimate est = interval(merged, options.confidence);
            checkpoint_half_widths.push_back(est.half_width);
            checkpoint_counts.push_back(est.samples_used);
            if (options.epsilon > 0.0 &&
                est.half_width <= options.epsilon * std::abs(est.point.real())) {
                target_met = true;
                break;
            }
        }
    }
    merged = fold();
    const IntervalEstimate est = interval(merged, options.confidence);

    RunReport report;
    report.command = "estimate";
    report.algorithm = to_cli_name(options.spec.kind);
    report.n = a.rows();
    report.m = nonzeros(a).entries.size();
    report.parameters = estimate_parameters(options);
    report.result = est.point;
    report.std_error = merged.std_error_re();
    report.interval = std::array<double, 2>{est.point.real() - est.half_width,
                                            est.point.real() + est.half_width};
    report.samples = merged.count();

    if (options.epsilon > 0.0 && !target_met) {
        report.warnings.push_back(
            "sample budget exhausted before the relative half-width target "
            "was met (target not met)");
    }
    const double kurtosis = merged.excess_kurtosis_re();
    if (kurtosis > 10.0) {
        std::ostringstream msg;
        msg << "samples are heavy-tailed (excess kurtosis " << std::fixed
            << std::setprecision(1) << kurtosis
            << "); the normal-approximation interval may be optimistic";
        report.warnings.push_back(msg.str());
    }
    if (checkpoint_half_widths.size() >= 2) {
        const double first_hw = checkpoint_half_widths.front();
        const double last_hw = checkpoint_half_widths.back();
        const double expected = first_hw *
            std::sqrt(static_cast<double>(checkpoint_counts.front()) /
                      static_cast<double>(checkpoint_counts.back()));
        if (last_hw > 1.5 * expected) {
            report.warnings.push_back(
                "confidence half-width shrank slower than 1/sqrt(samples) "
                "across checkpoints; sample moments may not have stabilized");
        }
    }
    const double imag_se = merged.std_error_im();
    if (std::abs(merged.mean().imag()) > 3.0 * imag_se &&
        std::abs(merged.mean().imag()) > 0.0) {
        report.warnings.push_back(
            "imaginary part of the running mean exceeds 3 standard errors; "
            "the input may not be effectively real");
    }
    report.elapsed_ms = elapsed_ms_since(start);
    return report;
}

namespace {

ReportParameters variance_parameters(const EstimatorSpec& spec) {
    ReportParameters params;
    if (spec.kind == EstimatorKind::kPhaseDeterminant ||
        spec.kind == EstimatorKind::kPairing ||
        spec.kind == EstimatorKind::kGauge) {
        params.p = spec.p;
    }
    if (spec.kind == EstimatorKind::kRecursiveSquare) params.depth = spec.depth;
    return params;
}

}  // namespace

RunReport run_variance(const Matrix& a, const EstimatorSpec& spec) {
    const auto start = Clock::now();
    const EnumeratedMoments moments = enumerate_expectation(a, spec);

    RunReport report;
    report.command = "variance";
    report.algorithm = to_cli_name(spec.kind);
    report.n = a.rows();
    report.m = nonzeros(a).entries.size();
    report.parameters = variance_parameters(spec);
    report.enumerated = to_enumerated_report(moments);
    report.elapsed_ms = elapsed_ms_since(start);
    return report;
}

RunReport run_variance_compare(const Matrix& a, const EstimatorSpec& first,
                               const EstimatorSpec& second) {
    const auto start = Clock::now();
    const EnumeratedMoments first_moments = enumerate_expectation(a, first);
    const EnumeratedMoments second_moments = enumerate_expectation(a, second);
    if (first_moments.second_moment == 0.0) {
        throw DomainError("first estimator has zero second moment; the "
                          "second-moment ratio is undefined");
    }

    CompareReport compare;
    compare.first_algorithm = to_cli_name(first.kind);
    compare.second_algorithm = to_cli_name(second.kind);
    compare.first = to_enumerated_report(first_moments);
    compare.second = to_enumerated_report(second_moments);
    compare.second_moment_ratio =
        second_moments.second_moment / first_moments.second_moment;

    RunReport report;
    report.command = "variance";
    report.algorithm = compare.first_algorithm + "," + compare.second_algorithm;
    report.n = a.rows();
    report.m = nonzeros(a).entries.size();
    report.compare = std::move(compare);
    report.elapsed_ms = elapsed_ms_since(start);
    return report;
}

RunReport run_verify(const VerifyOptions& options) {
    const auto start = Clock::now();
    const VerifyReport verify = run_verification(options);

    RunReport report;
    report.command = "verify";
    report.algorithm = "identity-suite";
    report.checks = verify.checks;
    if (!verify.all_ok()) {
        report.warnings.push_back("failed check: " + verify.first_failure());
    }
    report.elapsed_ms = elapsed_ms_since(start);
    return report;
}

RunReport run_bench(const BenchRunOptions& options) {
    const auto start = Clock::now();
    if (options.algorithms.empty()) {
        throw ParameterError("bench needs at least one algorithm");
    }
    if (options.n_low < 1 || options.n_high < options.n_low) {
        throw ParameterError("bench needs a nondecreasing n range starting at 1");
    }
    if (options.reps < 1) {
        throw ParameterError("bench needs at least one repetition");
    }

    RunReport report;
    report.command = "bench";
    {
        std::string names;
        for (std::size_t i = 0; i < options.algorithms.size(); ++i) {
            if (i > 0) names += ",";
            names += to_string(options.algorithms[i]);
        }
        report.algorithm = names;
    }
    report.parameters.seed = options.seed;
    if (options.threads > 0) report.parameters.threads = options.threads;

    ExactOptions opts;
    opts.threads = options.threads;
    opts.override_size_guard = options.override_size_guard;

    for (std::uint64_t n = options.n_low; n <= options.n_high; ++n) {
        // One seeded 0-1 matrix per size, shared by all algorithms so their
        // timings are comparable.
        Rng rng(options.seed, n);
        Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                a.at(i, j) = Scalar{static_cast<double>(rng.below(2)), 0.0};
            }
        }
        for (const ExactAlgorithm alg : options.algorithms) {
            std::vector<double> times;
            std::uint64_t terms = 0;
            for (int rep = 0; rep < options.reps; ++rep) {
                const auto rep_start = Clock::now();
                ExactResult result;
                switch (alg) {
                    case ExactAlgorithm::naive: result = per_naive(a, opts); break;
                    case ExactAlgorithm::ryser: result = per_ryser(a, opts); break;
                    case ExactAlgorithm::glynn: result = per_glynn(a, opts); break;
                    case ExactAlgorithm::gauge_z2:
                        result = per_gauge_z2_full(a, opts);
                        break;
                    case ExactAlgorithm::gauge_zp:
                        result = per_gauge_zp_full(a, options.p, opts);
                        break;
                }
                terms = result.terms_evaluated;
                times.push_back(elapsed_ms_since(rep_start));
            }
            std::sort(times.begin(), times.end());
            const std::size_t mid = times.size() / 2;
            const double median = times.size() % 2 == 1
                ? times[mid]
                : 0.5 * (times[mid - 1] + times[mid]);

            BenchRow row;
            row.algorithm = to_string(alg);
            row.n = n;
            row.median_ms = median;
            row.terms_per_second = median > 0.0
                ? static_cast<double>(terms) / (median / 1000.0)
                : 0.0;
            report.bench.push_back(std::move(row));
        }
    }
    report.elapsed_ms = elapsed_ms_since(start);
    return report;
}

}  // namespace permlab
