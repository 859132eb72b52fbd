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
//
// Brute-force references used only by tests and the verification command to
// certify the closed-form solvers. Deliberately naive; kept independent of
// the solver code paths they check.

#ifndef FPSPREC_ORACLE_HPP
#define FPSPREC_ORACLE_HPP

#include <armadillo>

namespace fpsprec {

struct OracleBudget {
    arma::uword max_n = 16;            // exhaustive enumeration cap, hard limit 24
    arma::uword grid_points = 100001;  // samples for scale grid scans
};

struct BruteForceResult {
    double alpha = 0.0;
    arma::uvec s;
    double f = 0.0;
};

/// Enumerates all 2^n binary s; per nonzero s the best scale is the 1-D least
/// squares fit <x,s>/<s,s>. Ties resolve to the lexicographically smallest s.
/// Throws std::invalid_argument past the enumeration cap.
BruteForceResult brute_force_alpha_s(const arma::vec& x, const OracleBudget& budget);

struct GridScanResult {
    double alpha = 0.0;
    double f = 0.0;
};

/// Dense scan of the scale over [2 min(x) - 1, 2 max(x) + 1], applying the
/// switch threshold rule at every sample and evaluating the objective
/// directly. Certifies that the candidate-set optimum is never beaten beyond
/// grid resolution.
GridScanResult grid_alpha_scan(const arma::vec& x, const OracleBudget& budget);

/// Equal-power eigenbeamforming rate: sum over the top n_streams singular
/// values of log2(1 + sigma_i^2 * snr_linear / n_streams).
double eigen_rate_oracle(const arma::cx_mat& h, double snr_linear, arma::uword n_streams);

}  // namespace fpsprec

#endif  // FPSPREC_ORACLE_HPP
