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

#include "fpsprec/evaluate.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace fpsprec {

namespace {

double log2_det_hermitian(const arma::cx_mat& a) {
    double val = 0.0;
    if (arma::log_det_sympd(val, a)) return val / std::log(2.0);
    // Near-singular covariance: nudge onto the PD cone and warn once per call.
    std::cerr << "warning: near-singular noise covariance, regularizing\n";
    const arma::cx_mat reg =
        a + 1e-12 * arma::cx_mat(a.n_rows, a.n_rows, arma::fill::eye);
    if (!arma::log_det_sympd(val, reg))
        throw std::runtime_error("noise covariance is not positive definite");
    return val / std::log(2.0);
}

using BlockFn = std::function<arma::cx_mat(arma::uword, arma::uword)>;

// Sum rate under Gaussian signaling, averaged over subcarriers. Per-stream
// symbol power is 1 and sigma^2 = 1/SNR, so the per-block transmit scaling
// drops out of the determinant ratio.
double spectral_efficiency_impl(const ChannelSet& ch, const BlockFn& tx_block,
                                const CombinerSet& combiners, const SystemConfig& cfg) {
    const double sigma2 = cfg.noise_power();
    double rate = 0.0;
    for (arma::uword f = 0; f < cfg.n_subcarriers; ++f) {
        for (arma::uword k = 0; k < cfg.n_users; ++k) {
            const arma::cx_mat w = combiners.effective(k, f);
            const arma::cx_mat& h = ch.at(k, f);
            arma::cx_mat noise_cov = sigma2 * (w.t() * w);
            arma::cx_mat signal;
            for (arma::uword j = 0; j < cfg.n_users; ++j) {
                const arma::cx_mat g = w.t() * h * tx_block(j, f);
                if (j == k) {
                    signal = g * g.t();
                } else {
                    noise_cov += g * g.t();
                }
            }
            rate += log2_det_hermitian(noise_cov + signal) -
                    log2_det_hermitian(noise_cov);
        }
    }
    return rate / static_cast<double>(cfg.n_subcarriers);
}

}  // namespace

double spectral_efficiency(const ChannelSet& ch, const TargetPrecoder& precoder,
                           const CombinerSet& combiners, const SystemConfig& cfg) {
    return spectral_efficiency_impl(
        ch, [&](arma::uword k, arma::uword f) { return precoder.block(k, f); },
        combiners, cfg);
}

double spectral_efficiency(const ChannelSet& ch, const HybridPrecoder& precoder,
                           const CombinerSet& combiners, const SystemConfig& cfg) {
    const arma::cx_mat analog = precoder.analog();
    return spectral_efficiency_impl(
        ch,
        [&](arma::uword k, arma::uword f) {
            const arma::uword c0 = block_col(k, f, cfg.n_users, cfg.n_streams);
            return arma::cx_mat(analog *
                                precoder.f_bb.cols(c0, c0 + cfg.n_streams - 1));
        },
        combiners, cfg);
}

void EvalResult::finalize() {
    const arma::uword n = per_realization.size();
    if (n == 0) {
        mean_se = std_se = mean_iterations = mean_candidate_set_size = 0.0;
        return;
    }
    double sum = 0.0, sum_iter = 0.0, sum_cand = 0.0;
    for (const auto& r : per_realization) {
        sum += r.spectral_efficiency_bits_per_s_per_hz;
        sum_iter += r.altmin_iterations;
        sum_cand += r.mean_candidate_set_size;
    }
    mean_se = sum / static_cast<double>(n);
    mean_iterations = sum_iter / static_cast<double>(n);
    mean_candidate_set_size = sum_cand / static_cast<double>(n);
    double ss = 0.0;
    for (const auto& r : per_realization) {
        const double d = r.spectral_efficiency_bits_per_s_per_hz - mean_se;
        ss += d * d;
    }
    std_se = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
}

const char* SweepSpec::name(SweepVariable v) {
    switch (v) {
        case SweepVariable::kSnrDb: return "snr_db";
        case SweepVariable::kNumShifters: return "n_shifters";
        case SweepVariable::kSingle: return "single";
    }
    return "single";
}

bool algorithm_known(const std::string& tag) {
    return tag == "fully-digital" || tag == "fps";
}

RealizationResult evaluate_realization(const SystemConfig& cfg, const SweepOptions& opts,
                                       const std::string& algorithm, arma::uword index,
                                       std::uint64_t seed) {
    RealizationResult res;
    res.realization_index = index;

    const ChannelSet ch = generate_channels(cfg, opts.channel, seed);
    const TargetPrecoder target = fully_digital_precoder(ch, cfg);

    if (algorithm == "fully-digital") {
        const CombinerSet combiners =
            design_combiners(ch, target, cfg, CombinerMode::kFullyDigital);
        res.spectral_efficiency_bits_per_s_per_hz =
            spectral_efficiency(ch, target, combiners, cfg);
        return res;
    }
    if (algorithm != "fps")
        throw std::invalid_argument("unknown algorithm tag '" + algorithm + "'");

    const PhaseBank bank = build_phase_bank(cfg.n_shifters, cfg.n_rf_tx);
    const Regime regime = regime_for(cfg.n_columns(), cfg.n_rf_tx);
    auto [hp, report] = altmin(target.f_opt, bank, regime, opts.altmin_tol,
                               opts.altmin_max_iter);

    // Combiners are designed against the digital target so the transmit-side
    // factorization is the only difference between the two algorithms; the
    // block-diagonalizing cascade then nulls leakage for those combiners.
    const CombinerSet combiners =
        design_combiners(ch, target, cfg, opts.combiner_mode);
    if (cfg.n_users > 1) hp = bd_baseband(ch, hp, combiners, cfg);
    hp = normalize_digital(hp, cfg);

    res.spectral_efficiency_bits_per_s_per_hz =
        spectral_efficiency(ch, hp, combiners, cfg);
    res.altmin_iterations = report.iterations;
    if (!report.candidate_set_sizes.empty()) {
        const double total = std::accumulate(report.candidate_set_sizes.begin(),
                                             report.candidate_set_sizes.end(), 0.0);
        res.mean_candidate_set_size =
            total / static_cast<double>(report.candidate_set_sizes.size());
    }
    return res;
}

std::vector<EvalResult> run_sweep(const SystemConfig& cfg_base, const SweepSpec& sweep,
                                  const std::vector<std::string>& algorithms,
                                  arma::uword n_realizations, const SweepOptions& opts) {
    if (n_realizations == 0)
        throw std::invalid_argument("need at least one realization");
    for (const auto& algo : algorithms)
        if (!algorithm_known(algo))
            throw std::invalid_argument("unknown algorithm tag '" + algo + "'");

    std::vector<double> values = sweep.values;
    if (sweep.variable == SweepVariable::kSingle) values = {0.0};
    if (values.empty())
        throw std::invalid_argument("sweep requested with no sweep values");

    std::vector<EvalResult> results;
    for (const double value : values) {
        SystemConfig cfg = cfg_base;
        if (sweep.variable == SweepVariable::kSnrDb) cfg.snr_db = value;
        if (sweep.variable == SweepVariable::kNumShifters)
            cfg.n_shifters = static_cast<arma::uword>(value);
        cfg.validate();

        for (const auto& algo : algorithms) {
            EvalResult er;
            er.config_echo = cfg;
            er.algorithm_tag = algo;
            er.sweep_var = SweepSpec::name(sweep.variable);
            er.sweep_value = sweep.variable == SweepVariable::kSingle ? 0.0 : value;

            std::vector<RealizationResult> slots(n_realizations);
            std::vector<char> ok(n_realizations, 0);
            std::atomic<arma::uword> next{0};
            const unsigned workers =
                std::max(1u, std::min<unsigned>(opts.n_threads, n_realizations));

            auto work = [&]() {
                for (;;) {
                    const arma::uword r = next.fetch_add(1);
                    if (r >= n_realizations) return;
                    try {
                        slots[r] = evaluate_realization(cfg, opts, algo, r,
                                                        cfg.rng_seed + r);
                        ok[r] = 1;
                    } catch (const std::exception& e) {
                        std::cerr << "warning: realization " << r << " (" << algo
                                  << ", " << er.sweep_var << "=" << value
                                  << ") failed: " << e.what() << "\n";
                    }
                }
            };
            if (workers == 1) {
                work();
            } else {
                std::vector<std::thread> pool;
                pool.reserve(workers);
                for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
                for (auto& t : pool) t.join();
            }

            // Deterministic merge by realization index.
            for (arma::uword r = 0; r < n_realizations; ++r) {
                if (ok[r]) er.per_realization.push_back(slots[r]);
                else er.failed_realizations.push_back(r);
            }
            er.finalize();
            results.push_back(std::move(er));
        }
    }
    return results;
}

}  // namespace fpsprec
