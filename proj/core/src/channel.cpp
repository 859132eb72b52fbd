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

#include "fpsprec/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "fpsprec/rng.hpp"

namespace fpsprec {

arma::cx_vec upa_steering(double azimuth, double elevation, const ArrayGrid& grid) {
    const arma::uword n = grid.rows * grid.cols;
    arma::cx_vec v(n);
    const double se = std::sin(elevation);
    const double ce = std::cos(elevation);
    const double sa = std::sin(azimuth);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    arma::uword idx = 0;
    for (arma::uword q = 0; q < grid.cols; ++q) {
        for (arma::uword p = 0; p < grid.rows; ++p) {
            const double phase =
                M_PI * (static_cast<double>(p) * sa * se + static_cast<double>(q) * ce);
            v[idx++] = scale * std::complex<double>(std::cos(phase), std::sin(phase));
        }
    }
    return v;
}

namespace {

// Sum of gain * a_rx a_tx^H over the rays of one cluster.
arma::cx_mat cluster_matrix(const ClusterParams& cluster, const ArrayGrid& tx,
                            const ArrayGrid& rx) {
    arma::cx_mat h(rx.rows * rx.cols, tx.rows * tx.cols, arma::fill::zeros);
    for (const RayParams& ray : cluster.rays) {
        const arma::cx_vec at = upa_steering(ray.aod_azimuth, ray.aod_elevation, tx);
        const arma::cx_vec ar = upa_steering(ray.aoa_azimuth, ray.aoa_elevation, rx);
        h += ray.gain * (ar * at.t());
    }
    return h;
}

}  // namespace

ChannelSet generate_channels(const SystemConfig& cfg, const ChannelParams& params,
                             std::uint64_t seed) {
    cfg.validate();
    if (params.n_clusters == 0 || params.n_rays == 0)
        throw std::invalid_argument("channel model needs at least one cluster and one ray");
    const ArrayGrid tx = cfg.resolved_tx_grid();
    const ArrayGrid rx = cfg.resolved_rx_grid();

    const double spread = params.angular_spread_deg * M_PI / 180.0;
    const double scale =
        std::sqrt(static_cast<double>(cfg.n_tx_antennas * cfg.n_rx_antennas) /
                  static_cast<double>(params.n_clusters * params.n_rays));

    Rng rng(seed);
    ChannelSet set;
    set.n_users = cfg.n_users;
    set.n_subcarriers = cfg.n_subcarriers;
    set.channels.resize(cfg.n_users * cfg.n_subcarriers);
    set.cluster_params.resize(cfg.n_users);

    for (arma::uword k = 0; k < cfg.n_users; ++k) {
        auto& clusters = set.cluster_params[k];
        clusters.resize(params.n_clusters);
        for (arma::uword c = 0; c < params.n_clusters; ++c) {
            ClusterParams& cl = clusters[c];
            cl.delay_tap = c;
            const double aod_az0 = rng.uniform(0.0, 2.0 * M_PI);
            const double aod_el0 = rng.uniform(0.0, M_PI);
            const double aoa_az0 = rng.uniform(0.0, 2.0 * M_PI);
            const double aoa_el0 = rng.uniform(0.0, M_PI);
            cl.rays.resize(params.n_rays);
            for (RayParams& ray : cl.rays) {
                ray.gain = rng.normal_cx();
                ray.aod_azimuth = aod_az0 + rng.laplace(spread);
                ray.aod_elevation = aod_el0 + rng.laplace(spread);
                ray.aoa_azimuth = aoa_az0 + rng.laplace(spread);
                ray.aoa_elevation = aoa_el0 + rng.laplace(spread);
            }
        }

        // Per-cluster matrices once, then the per-subcarrier DFT phase ramp.
        std::vector<arma::cx_mat> per_cluster(params.n_clusters);
        for (arma::uword c = 0; c < params.n_clusters; ++c)
            per_cluster[c] = cluster_matrix(clusters[c], tx, rx);

        for (arma::uword f = 0; f < cfg.n_subcarriers; ++f) {
            arma::cx_mat h(cfg.n_rx_antennas, cfg.n_tx_antennas, arma::fill::zeros);
            for (arma::uword c = 0; c < params.n_clusters; ++c) {
                const double phi = -2.0 * M_PI * static_cast<double>(f) *
                                   static_cast<double>(clusters[c].delay_tap) /
                                   static_cast<double>(cfg.n_subcarriers);
                h += per_cluster[c] * std::complex<double>(std::cos(phi), std::sin(phi));
            }
            h *= scale;
            if (!h.is_finite())
                throw std::runtime_error("channel generation produced non-finite entries");
            set.channels[k + cfg.n_users * f] = std::move(h);
        }
    }
    return set;
}

arma::cx_mat rebuild_channel(const SystemConfig& cfg, const ChannelParams& params,
                             const std::vector<ClusterParams>& user_clusters,
                             arma::uword subcarrier) {
    const ArrayGrid tx = cfg.resolved_tx_grid();
    const ArrayGrid rx = cfg.resolved_rx_grid();
    const double scale =
        std::sqrt(static_cast<double>(cfg.n_tx_antennas * cfg.n_rx_antennas) /
                  static_cast<double>(params.n_clusters * params.n_rays));
    arma::cx_mat h(cfg.n_rx_antennas, cfg.n_tx_antennas, arma::fill::zeros);
    for (const ClusterParams& cl : user_clusters) {
        const double phi = -2.0 * M_PI * static_cast<double>(subcarrier) *
                           static_cast<double>(cl.delay_tap) /
                           static_cast<double>(cfg.n_subcarriers);
        h += cluster_matrix(cl, tx, rx) * std::complex<double>(std::cos(phi), std::sin(phi));
    }
    return scale * h;
}

}  // namespace fpsprec
