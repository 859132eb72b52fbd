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

#ifndef FPSPREC_EVALUATE_HPP
#define FPSPREC_EVALUATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <armadillo>

#include "fpsprec/channel.hpp"
#include "fpsprec/config.hpp"
#include "fpsprec/precoding.hpp"

namespace fpsprec {

/// Gaussian-signaling sum rate in bits/s/Hz, averaged over subcarriers.
/// Per (user, subcarrier): log2 det(I + R_n^{-1} G_k G_k^H) with
/// G_j = W^H H B_j and R_n = sigma^2 W^H W + sum_{j != k} G_j G_j^H, under the
/// convention that per-stream symbol power is 1 and sigma^2 = 1 / SNR.
/// Residual inter-user leakage therefore degrades, never inflates, the rate.
double spectral_efficiency(const ChannelSet& ch, const TargetPrecoder& precoder,
                           const CombinerSet& combiners, const SystemConfig& cfg);
double spectral_efficiency(const ChannelSet& ch, const HybridPrecoder& precoder,
                           const CombinerSet& combiners, const SystemConfig& cfg);

struct RealizationResult {
    arma::uword realization_index = 0;
    double spectral_efficiency_bits_per_s_per_hz = 0.0;
    int altmin_iterations = 0;              // 0 for the fully digital benchmark
    double mean_candidate_set_size = 0.0;   // 0 for the fully digital benchmark
};

struct EvalResult {
    std::vector<RealizationResult> per_realization;
    double mean_se = 0.0;
    double std_se = 0.0;  // sample standard deviation
    SystemConfig config_echo;
    std::string algorithm_tag;
    double sweep_value = 0.0;
    std::string sweep_var;
    double mean_iterations = 0.0;
    double mean_candidate_set_size = 0.0;
    double runtime_ms = 0.0;
    std::vector<arma::uword> failed_realizations;

    void finalize();  // recompute aggregates from per_realization
};

enum class SweepVariable { kSnrDb, kNumShifters, kSingle };

struct SweepSpec {
    SweepVariable variable = SweepVariable::kSingle;
    std::vector<double> values;  // ignored for kSingle

    static const char* name(SweepVariable v);
};

struct SweepOptions {
    ChannelParams channel;
    CombinerMode combiner_mode = CombinerMode::kFullyDigital;
    double altmin_tol = 1e-4;
    int altmin_max_iter = 100;
    unsigned n_threads = 1;  // realizations are independent; any count is deterministic
};

/// Known algorithm tags: "fully-digital" and "fps".
bool algorithm_known(const std::string& tag);

/// Runs every sweep point x algorithm over n_realizations seeded channel
/// draws. Realization r uses seed cfg.rng_seed + r for every algorithm and
/// sweep point, so all of them see identical channels. A realization that
/// throws is recorded, skipped with a warning, and the run continues.
std::vector<EvalResult> run_sweep(const SystemConfig& cfg_base, const SweepSpec& sweep,
                                  const std::vector<std::string>& algorithms,
                                  arma::uword n_realizations, const SweepOptions& opts);

/// Single (channel, algorithm) evaluation used by run_sweep; exposed for
/// tests. Returns the achieved spectral efficiency and fills the iteration /
/// candidate statistics for the hybrid path.
RealizationResult evaluate_realization(const SystemConfig& cfg, const SweepOptions& opts,
                                       const std::string& algorithm, arma::uword index,
                                       std::uint64_t seed);

}  // namespace fpsprec

#endif  // FPSPREC_EVALUATE_HPP
