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

#include "fpsprec/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "fpsprec/svd_util.hpp"

namespace fpsprec {

BruteForceResult brute_force_alpha_s(const arma::vec& x, const OracleBudget& budget) {
    const arma::uword n = x.n_elem;
    const arma::uword cap = std::min<arma::uword>(budget.max_n, 24);
    if (n > cap)
        throw std::invalid_argument("enumeration budget exceeded: n = " +
                                    std::to_string(n) + " > " + std::to_string(cap));

    const double sumsq = arma::dot(x, x);
    BruteForceResult best;
    best.alpha = 0.0;
    best.s = arma::uvec(n, arma::fill::zeros);
    best.f = sumsq;  // the all-off configuration

    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t mask = 1; mask < count; ++mask) {
        double dot = 0.0;
        arma::uword active = 0;
        for (arma::uword i = 0; i < n; ++i) {
            if (mask & (std::uint64_t{1} << i)) {
                dot += x[i];
                ++active;
            }
        }
        const double alpha = dot / static_cast<double>(active);
        const double f = sumsq - dot * dot / static_cast<double>(active);
        bool take = f < best.f;
        if (!take && f == best.f) {
            // Exact ties resolve to the lexicographically smallest s.
            for (arma::uword i = 0; i < n; ++i) {
                const arma::uword bit = (mask & (std::uint64_t{1} << i)) ? 1 : 0;
                if (bit != best.s[i]) {
                    take = bit < best.s[i];
                    break;
                }
            }
        }
        if (take) {
            best.f = f;
            best.alpha = alpha;
            for (arma::uword i = 0; i < n; ++i)
                best.s[i] = (mask & (std::uint64_t{1} << i)) ? 1 : 0;
        }
    }
    return best;
}

GridScanResult grid_alpha_scan(const arma::vec& x, const OracleBudget& budget) {
    if (x.n_elem == 0 || arma::abs(x).max() == 0.0)
        throw std::invalid_argument("grid scan needs a nonzero vector");
    if (budget.grid_points < 2)
        throw std::invalid_argument("grid scan needs at least two samples");

    const double lo = 2.0 * x.min() - 1.0;
    const double hi = 2.0 * x.max() + 1.0;
    const double step = (hi - lo) / static_cast<double>(budget.grid_points - 1);

    GridScanResult best;
    best.f = arma::dot(x, x);
    best.alpha = 0.0;
    for (arma::uword g = 0; g < budget.grid_points; ++g) {
        const double alpha = lo + step * static_cast<double>(g);
        if (alpha == 0.0) continue;
        const double half = alpha / 2.0;
        double f = 0.0;
        if (alpha > 0.0) {
            for (const double v : x) f += (v > half) ? (v - alpha) * (v - alpha) : v * v;
        } else {
            for (const double v : x) f += (v < half) ? (v - alpha) * (v - alpha) : v * v;
        }
        if (f < best.f) {
            best.f = f;
            best.alpha = alpha;
        }
    }
    return best;
}

double eigen_rate_oracle(const arma::cx_mat& h, double snr_linear,
                         arma::uword n_streams) {
    const arma::vec sv = arma::svd(h);
    if (sv.n_elem < n_streams)
        throw std::invalid_argument("stream count exceeds the channel rank budget");
    double rate = 0.0;
    for (arma::uword i = 0; i < n_streams; ++i)
        rate += std::log2(1.0 + sv[i] * sv[i] * snr_linear /
                          static_cast<double>(n_streams));
    return rate;
}

}  // namespace fpsprec
