// SPDX-License-Identifier: Apache-2.0
//
// fpsprec: hybrid precoding for mm-wave MIMO with fixed phase shifters
// Copyright (C) 2026 the fpsprec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef FPSPREC_RUNNER_HPP
#define FPSPREC_RUNNER_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fpsprec/evaluate.hpp"
#include "fpsprec/oracle.hpp"

namespace fpsprec {

inline constexpr const char* kVersion = "0.1.0";

/// Everything needed to reproduce one experiment run. Echoed verbatim into
/// the output headers; equal manifests (same seed) give equal results.
struct RunManifest {
    std::string config_path;           // empty = built-in profile
    std::string sweep = "single";      // snr | nc | single
    std::vector<std::string> algorithms = {"fps", "fully-digital"};
    std::vector<double> sweep_values;  // empty = defaults for the sweep type
    arma::uword realizations = 100;
    std::string output_path = "results.csv";
    std::uint64_t seed = 1;
    bool paper_scale = false;
    unsigned n_threads = 1;
    std::string timestamp;             // filled at run time
};

// Exit codes shared between the library entry points and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitBadConfig = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitIoError = 4;

/// Executes the sweep described by the manifest and writes the CSV plus a
/// JSON sidecar (same stem, .json suffix) with per-realization data. CSV rows
/// are deterministic for a fixed manifest; wall-clock figures live in the
/// runtime_ms column and the '#' header only.
int cmd_run(const RunManifest& manifest, std::ostream& log);

using AlphaSolverFn = std::function<AlphaSwitchResult(const arma::vec&)>;

/// Certifies the closed-form scale/switch solver against the exhaustive and
/// grid oracles on random instances. Prints a pass/fail summary; on mismatch
/// the offending vector is serialized for reproduction. The solver is
/// injectable so tests can confirm a broken solver is actually caught.
int cmd_verify(const OracleBudget& budget, arma::uword n_cases, std::uint64_t seed,
               std::ostream& log, const AlphaSolverFn& solver = {});

/// Sweep defaults: snr -> {-15,-10,-5,0,5,10}, nc -> {5,10,15,20,25,30}.
std::vector<double> default_sweep_values(const std::string& sweep);

/// CSV body (everything below the '#' header lines) for comparison in the
/// determinism contract. Strips the trailing runtime_ms field of each row,
/// which is a wall-clock measurement and deliberately outside the contract.
std::string csv_body_for_comparison(const std::string& csv_text);

}  // namespace fpsprec

#endif  // FPSPREC_RUNNER_HPP
