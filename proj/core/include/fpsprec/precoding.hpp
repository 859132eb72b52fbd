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

#ifndef FPSPREC_PRECODING_HPP
#define FPSPREC_PRECODING_HPP

#include <vector>

#include <armadillo>

#include "fpsprec/altmin.hpp"
#include "fpsprec/channel.hpp"
#include "fpsprec/config.hpp"

namespace fpsprec {

/// Column index of the first stream of user k on subcarrier f under the
/// user-major block convention (block index k + K * f).
inline arma::uword block_col(arma::uword user, arma::uword subcarrier,
                             arma::uword n_users, arma::uword n_streams) {
    return (user + n_users * subcarrier) * n_streams;
}

/// Fully digital target precoder: the column-concatenation of all per-user,
/// per-subcarrier N_t x N_s blocks. Each block has orthonormal columns, so its
/// squared Frobenius norm is N_s.
struct TargetPrecoder {
    arma::cx_mat f_opt;  // N_t x (K * N_s * F)
    arma::uword n_users = 0;
    arma::uword n_subcarriers = 0;
    arma::uword n_streams = 0;

    arma::cx_mat block(arma::uword user, arma::uword subcarrier) const {
        const arma::uword c0 = block_col(user, subcarrier, n_users, n_streams);
        return f_opt.cols(c0, c0 + n_streams - 1);
    }
};

/// Unconstrained benchmark precoder. Single user: dominant right singular
/// vectors per subcarrier. Multiuser: block diagonalization (null-space
/// projection against the other users' stacked channels) followed by
/// eigenbeamforming on the projected channel. Equal power per block.
TargetPrecoder fully_digital_precoder(const ChannelSet& ch, const SystemConfig& cfg);

/// Receive combiners, stored factored: w_rf per user, w_bb per user and
/// subcarrier. In fully digital mode w_rf is the N_r identity and w_bb the
/// orthonormal N_r x N_s combiner; in hybrid mode w_rf = S C from a
/// receiver-side alternating run and w_bb its (unnormalized) baseband stage.
struct CombinerSet {
    CombinerMode mode = CombinerMode::kFullyDigital;
    std::vector<arma::cx_mat> w_rf;                 // [user]
    std::vector<std::vector<arma::cx_mat>> w_bb;    // [user][subcarrier]

    arma::cx_mat effective(arma::uword user, arma::uword subcarrier) const {
        return w_rf[user] * w_bb[user][subcarrier];
    }
};

/// Combiners for a given transmit precoder. Fully digital: dominant left
/// singular vectors of each effective channel H * B. Hybrid: the per-user
/// concatenated fully digital combiners become the target of a receiver-side
/// alternating run (no power normalization on the receive side).
CombinerSet design_combiners(const ChannelSet& ch, const TargetPrecoder& precoder,
                             const SystemConfig& cfg, CombinerMode mode);
CombinerSet design_combiners(const ChannelSet& ch, const HybridPrecoder& precoder,
                             const SystemConfig& cfg, CombinerMode mode);

/// Cascades a per-subcarrier block-diagonalizing rotation onto the baseband
/// stage so the effective channels W^H H S C F_BB become inter-user
/// interference free. Single user passes through unchanged. Throws when a
/// null space is too small to carry N_s streams.
HybridPrecoder bd_baseband(const ChannelSet& ch, const HybridPrecoder& hp,
                           const CombinerSet& combiners, const SystemConfig& cfg);

/// Rescales the baseband stage so ||S C F_BB||_F^2 = K N_s F exactly.
/// Throws when the analog stage annihilates the digital one (all-zero S).
HybridPrecoder normalize_digital(const HybridPrecoder& hp, const SystemConfig& cfg);

}  // namespace fpsprec

#endif  // FPSPREC_PRECODING_HPP
