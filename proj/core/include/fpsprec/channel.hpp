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

#ifndef FPSPREC_CHANNEL_HPP
#define FPSPREC_CHANNEL_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include <armadillo>

#include "fpsprec/config.hpp"

namespace fpsprec {

/// One propagation ray: complex gain plus departure/arrival angles (radians).
struct RayParams {
    std::complex<double> gain;
    double aod_azimuth = 0.0;
    double aod_elevation = 0.0;
    double aoa_azimuth = 0.0;
    double aoa_elevation = 0.0;
};

/// A scattering cluster: shared delay tap, one entry per ray.
struct ClusterParams {
    arma::uword delay_tap = 0;
    std::vector<RayParams> rays;
};

/// Per-user, per-subcarrier channel matrices plus the draw that produced them.
/// channels[k + K*f] is the N_r x N_t matrix of user k on subcarrier f.
struct ChannelSet {
    arma::uword n_users = 0;
    arma::uword n_subcarriers = 0;
    std::vector<arma::cx_mat> channels;
    std::vector<std::vector<ClusterParams>> cluster_params;  // [user][cluster]

    const arma::cx_mat& at(arma::uword user, arma::uword subcarrier) const {
        return channels[user + n_users * subcarrier];
    }
};

/// Planar-array steering vector, half-wavelength spacing, unit norm.
/// Element (p, q) of a rows x cols grid carries phase
/// pi * (p * sin(az) * sin(el) + q * cos(el)).
arma::cx_vec upa_steering(double azimuth, double elevation, const ArrayGrid& grid);

/// Clustered multipath channels. Each cluster owns a delay tap equal to its
/// index; subcarrier f applies exp(-j 2 pi f tap / F) per cluster. The global
/// scale sqrt(N_t N_r / (n_clusters n_rays)) makes E||H||_F^2 = N_t * N_r.
/// Same seed gives a bit-identical ChannelSet.
ChannelSet generate_channels(const SystemConfig& cfg, const ChannelParams& params,
                             std::uint64_t seed);

/// Rebuilds one user/subcarrier matrix from stored cluster parameters.
/// Used to certify that the stored draw fully determines the channel.
arma::cx_mat rebuild_channel(const SystemConfig& cfg, const ChannelParams& params,
                             const std::vector<ClusterParams>& user_clusters,
                             arma::uword subcarrier);

}  // namespace fpsprec

#endif  // FPSPREC_CHANNEL_HPP
