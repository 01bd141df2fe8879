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

#include <string>
#include <vector>

namespace permlab {

/// One named identity or equivalence check.
struct CheckResult {
    std::string name;
    bool ok = false;
    double max_residual = 0.0;
    std::string detail;  ///< human-readable context (counts, tolerances)
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_ok() const;
    /// Name of the first failing check, empty when everything passed.
    std::string first_failure() const;
};

struct VerifyOptions {
    /// Largest dimension for the symbolic permanent identity (2..4).
    int max_n = 4;
    /// Fault-injection tag for harness self-tests: "omega-table" corrupts
    /// the root-of-unity table inside the phase-channel identity checks,
    /// which must make exactly those checks fail.  Empty = honest run.
    std::string fault;
};

/// Run the full identity suite: symbolic permanent expansion vs the
/// enumeration oracle, all single-mode decoupling identities, algebra laws,
/// and cross-checks between the exact permanent algorithms.
VerifyReport run_verification(const VerifyOptions& options);

}  // namespace permlab
