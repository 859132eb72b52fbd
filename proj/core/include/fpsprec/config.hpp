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

#ifndef FPSPREC_CONFIG_HPP
#define FPSPREC_CONFIG_HPP

#include <cstdint>
#include <string>

#include <armadillo>

namespace fpsprec {

/// Rectangular planar-array layout. rows * cols must equal the antenna count.
struct ArrayGrid {
    arma::uword rows = 0;
    arma::uword cols = 0;

    bool specified() const { return rows > 0 && cols > 0; }
};

/// Most-square factorization n = rows * cols with rows <= cols.
ArrayGrid default_grid(arma::uword n_antennas);

/// All scalar system dimensions and the operating point.
///
/// Constraints: n_users * n_streams <= n_rf_tx < n_tx_antennas and
/// n_streams <= n_rf_rx < n_rx_antennas.
struct SystemConfig {
    arma::uword n_tx_antennas = 64;
    arma::uword n_rx_antennas = 16;
    arma::uword n_users = 2;
    arma::uword n_subcarriers = 16;
    arma::uword n_streams = 2;
    arma::uword n_rf_tx = 4;
    arma::uword n_rf_rx = 2;
    arma::uword n_shifters = 30;
    double snr_db = 0.0;
    std::uint64_t rng_seed = 1;

    ArrayGrid tx_grid;  // auto-factored when unspecified
    ArrayGrid rx_grid;

    /// Total column count of the concatenated precoder, K * N_s * F.
    arma::uword n_columns() const { return n_users * n_streams * n_subcarriers; }

    double snr_linear() const { return std::pow(10.0, snr_db / 10.0); }

    /// Noise power under the convention that per-stream symbol power is 1.
    double noise_power() const { return 1.0 / snr_linear(); }

    /// Throws std::invalid_argument naming the violated constraint.
    void validate() const;

    /// Resolved planar layouts (explicit grids validated, others auto-factored).
    ArrayGrid resolved_tx_grid() const;
    ArrayGrid resolved_rx_grid() const;

    /// Small desk-scale profile used by tests and the default CLI run.
    static SystemConfig desk_profile();
    /// Full-scale profile matching the large simulation setup.
    static SystemConfig paper_scale_profile();
};

/// Clustered-channel generation knobs.
struct ChannelParams {
    arma::uword n_clusters = 5;
    arma::uword n_rays = 10;
    double angular_spread_deg = 10.0;
};

enum class CombinerMode { kFullyDigital, kHybridFps };

/// Parsed contents of a flat key=value config file.
struct ConfigFile {
    SystemConfig system;
    ChannelParams channel;
    CombinerMode combiner_mode = CombinerMode::kFullyDigital;
};

/// Parses a flat key = value document. Unknown keys raise
/// std::invalid_argument with the offending key name.
ConfigFile parse_config_file(const std::string& path);
ConfigFile parse_config_text(const std::string& text);

std::string combiner_mode_name(CombinerMode mode);

}  // namespace fpsprec

#endif  // FPSPREC_CONFIG_HPP
