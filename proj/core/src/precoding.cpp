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

#include "fpsprec/precoding.hpp"

#include <cmath>
#include <stdexcept>

#include "fpsprec/svd_util.hpp"

namespace fpsprec {

namespace {

// Stacked channels of everyone but `user` on one subcarrier.
arma::cx_mat stack_other_users(const ChannelSet& ch, arma::uword user,
                               arma::uword subcarrier) {
    arma::cx_mat stacked;
    for (arma::uword j = 0; j < ch.n_users; ++j) {
        if (j == user) continue;
        stacked = stacked.is_empty() ? ch.at(j, subcarrier)
                                     : arma::join_vert(stacked, ch.at(j, subcarrier));
    }
    return stacked;
}

arma::cx_mat dominant_right_vectors(const arma::cx_mat& h, arma::uword n_streams) {
    const SvdFactors svd = thin_svd(h);
    if (svd.v.n_cols < n_streams)
        throw std::invalid_argument("channel rank budget below the stream count");
    return svd.v.cols(0, n_streams - 1);
}

}  // namespace

TargetPrecoder fully_digital_precoder(const ChannelSet& ch, const SystemConfig& cfg) {
    TargetPrecoder target;
    target.n_users = cfg.n_users;
    target.n_subcarriers = cfg.n_subcarriers;
    target.n_streams = cfg.n_streams;
    target.f_opt.set_size(cfg.n_tx_antennas, cfg.n_columns());

    const double block_power = std::sqrt(static_cast<double>(cfg.n_streams));
    for (arma::uword f = 0; f < cfg.n_subcarriers; ++f) {
        for (arma::uword k = 0; k < cfg.n_users; ++k) {
            arma::cx_mat block;
            if (cfg.n_users == 1) {
                block = dominant_right_vectors(ch.at(k, f), cfg.n_streams);
            } else {
                const arma::cx_mat nullbasis = null_space(stack_other_users(ch, k, f));
                if (nullbasis.n_cols < cfg.n_streams)
                    throw std::invalid_argument(
                        "block diagonalization infeasible: interference null space "
                        "smaller than the stream count");
                block = nullbasis *
                        dominant_right_vectors(ch.at(k, f) * nullbasis, cfg.n_streams);
            }
            block *= block_power / arma::norm(block, "fro");
            const arma::uword c0 = block_col(k, f, cfg.n_users, cfg.n_streams);
            target.f_opt.cols(c0, c0 + cfg.n_streams - 1) = block;
        }
    }
    return target;
}

namespace {

// Fully digital combiner of one effective channel: dominant left singular
// vectors, orthonormal by construction.
arma::cx_mat digital_combiner(const arma::cx_mat& effective, arma::uword n_streams) {
    if (arma::norm(effective, "fro") < 1e-300)
        throw std::runtime_error("degenerate input: effective channel is zero");
    const SvdFactors svd = thin_svd(effective);
    if (svd.u.n_cols < n_streams)
        throw std::invalid_argument("effective channel rank below the stream count");
    return svd.u.cols(0, n_streams - 1);
}

template <typename BlockFn>
CombinerSet design_combiners_impl(const ChannelSet& ch, const SystemConfig& cfg,
                                  CombinerMode mode, BlockFn&& tx_block) {
    CombinerSet set;
    set.mode = mode;
    set.w_rf.resize(cfg.n_users);
    set.w_bb.resize(cfg.n_users);

    for (arma::uword k = 0; k < cfg.n_users; ++k) {
        std::vector<arma::cx_mat> digital(cfg.n_subcarriers);
        for (arma::uword f = 0; f < cfg.n_subcarriers; ++f)
            digital[f] = digital_combiner(ch.at(k, f) * tx_block(k, f), cfg.n_streams);

        set.w_bb[k].resize(cfg.n_subcarriers);
        if (mode == CombinerMode::kFullyDigital) {
            set.w_rf[k] = arma::cx_mat(cfg.n_rx_antennas, cfg.n_rx_antennas,
                                       arma::fill::eye);
            for (arma::uword f = 0; f < cfg.n_subcarriers; ++f)
                set.w_bb[k][f] = digital[f];
            continue;
        }

        // Receiver-side factorization: the concatenated digital combiners are
        // the target of an alternating run with receive dimensions. No power
        // normalization on this side.
        arma::cx_mat w_target(cfg.n_rx_antennas, cfg.n_streams * cfg.n_subcarriers);
        for (arma::uword f = 0; f < cfg.n_subcarriers; ++f)
            w_target.cols(f * cfg.n_streams, (f + 1) * cfg.n_streams - 1) = digital[f];

        const PhaseBank bank = build_phase_bank(cfg.n_shifters, cfg.n_rf_rx);
        const Regime regime = regime_for(w_target.n_cols, cfg.n_rf_rx);
        auto [hp, report] = altmin(w_target, bank, regime);
        set.w_rf[k] = hp.analog();
        for (arma::uword f = 0; f < cfg.n_subcarriers; ++f)
            set.w_bb[k][f] =
                hp.f_bb.cols(f * cfg.n_streams, (f + 1) * cfg.n_streams - 1);
    }
    return set;
}

}  // namespace

CombinerSet design_combiners(const ChannelSet& ch, const TargetPrecoder& precoder,
                             const SystemConfig& cfg, CombinerMode mode) {
    return design_combiners_impl(ch, cfg, mode, [&](arma::uword k, arma::uword f) {
        return precoder.block(k, f);
    });
}

CombinerSet design_combiners(const ChannelSet& ch, const HybridPrecoder& precoder,
                             const SystemConfig& cfg, CombinerMode mode) {
    const arma::cx_mat analog = precoder.analog();
    return design_combiners_impl(ch, cfg, mode, [&](arma::uword k, arma::uword f) {
        const arma::uword c0 = block_col(k, f, cfg.n_users, cfg.n_streams);
        return arma::cx_mat(analog * precoder.f_bb.cols(c0, c0 + cfg.n_streams - 1));
    });
}

HybridPrecoder bd_baseband(const ChannelSet& ch, const HybridPrecoder& hp,
                           const CombinerSet& combiners, const SystemConfig& cfg) {
    if (cfg.n_users == 1) return hp;

    HybridPrecoder out = hp;
    const arma::cx_mat analog = hp.analog();
    const arma::uword kns = cfg.n_users * cfg.n_streams;

    for (arma::uword f = 0; f < cfg.n_subcarriers; ++f) {
        const arma::uword c0 = block_col(0, f, cfg.n_users, cfg.n_streams);
        const arma::cx_mat fbb_f = hp.f_bb.cols(c0, c0 + kns - 1);

        // Per-user effective channels through combiner, channel, and the
        // whole subcarrier's baseband: N_s x (K N_s) each.
        std::vector<arma::cx_mat> eff(cfg.n_users);
        for (arma::uword k = 0; k < cfg.n_users; ++k)
            eff[k] = combiners.effective(k, f).t() * ch.at(k, f) * analog * fbb_f;

        arma::cx_mat d(kns, kns, arma::fill::zeros);
        for (arma::uword k = 0; k < cfg.n_users; ++k) {
            arma::cx_mat others;
            for (arma::uword j = 0; j < cfg.n_users; ++j) {
                if (j == k) continue;
                others = others.is_empty() ? eff[j] : arma::join_vert(others, eff[j]);
            }
            const arma::cx_mat nullbasis = null_space(others);
            if (nullbasis.n_cols < cfg.n_streams)
                throw std::runtime_error(
                    "block diagonalization infeasible: effective null space smaller "
                    "than the stream count");
            const SvdFactors svd = thin_svd(eff[k] * nullbasis);
            d.cols(k * cfg.n_streams, (k + 1) * cfg.n_streams - 1) =
                nullbasis * svd.v.cols(0, cfg.n_streams - 1);
        }
        out.f_bb.cols(c0, c0 + kns - 1) = fbb_f * d;
    }
    return out;
}

HybridPrecoder normalize_digital(const HybridPrecoder& hp, const SystemConfig& cfg) {
    HybridPrecoder out = hp;
    const double norm = arma::norm(hp.analog() * hp.f_bb, "fro");
    if (norm < 1e-300)
        throw std::runtime_error(
            "normalization impossible: S C F_BB has zero norm (degenerate "
            "alternating-minimization output, check the switch matrix)");
    const double budget = std::sqrt(static_cast<double>(cfg.n_columns()));
    out.f_bb = (budget / norm) * hp.f_bb;
    return out;
}

}  // namespace fpsprec
