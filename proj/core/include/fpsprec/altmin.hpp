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
// Alternating-minimization factorization of a fully digital precoder into
//   F_opt  ~=  S * C * (alpha * F_DD)
// where S is a binary switch matrix, C a fixed phase-shift bank, alpha a real
// scale, and F_DD semi-unitary. Both block updates have closed forms: the
// (alpha, S) step reduces to fitting alpha * s to a sorted real vector, the
// F_DD step is a Procrustes-type SVD projection.

#ifndef FPSPREC_ALTMIN_HPP
#define FPSPREC_ALTMIN_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <armadillo>

#include "fpsprec/config.hpp"

namespace fpsprec {

/// Bank of n_shifters fixed phase shifters feeding n_rf RF chains.
/// c holds the unit-norm shifter vector, c_i = exp(j theta_i) / sqrt(N_c);
/// C is block-diagonal with n_rf copies of c, so C^H C = I.
struct PhaseBank {
    arma::vec phases;   // theta_1 ... theta_{N_c} in [0, 2 pi)
    arma::cx_vec c;     // length N_c
    arma::cx_mat C;     // (N_c * n_rf) x n_rf
    arma::uword n_shifters = 0;
    arma::uword n_rf = 0;
};

/// Uniformly spaced phases theta_i = 2 pi (i - 1) / N_c.
PhaseBank build_phase_bank(arma::uword n_shifters, arma::uword n_rf);

/// Phase bank with caller-supplied phases.
PhaseBank build_phase_bank(const arma::vec& phases, arma::uword n_rf);

/// Binary on/off switch states, antennas x (N_c * n_rf). Entries are exact
/// integers, never approximate reals.
struct SwitchMatrix {
    arma::umat s;

    arma::uword n_active() const { return arma::accu(s); }
    arma::cx_mat cx() const {
        return arma::conv_to<arma::cx_mat>::from(arma::conv_to<arma::mat>::from(s));
    }
};

enum class Regime { kSingleCarrier, kMulticarrier };

/// Regime implied by the column count: tall digital precoders (M <= n_rf) use
/// the single-carrier column-orthonormal constraint, wide ones (M >= n_rf) the
/// multicarrier row-orthonormal constraint.
Regime regime_for(arma::uword n_columns, arma::uword n_rf);

/// Factorized hybrid precoder. f_dd is the semi-unitary digital stage from the
/// alternating loop, f_bb the current baseband matrix (alpha * f_dd right after
/// the loop, then rotated by the block-diagonalizing cascade and rescaled by
/// the power normalization).
struct HybridPrecoder {
    SwitchMatrix sw;
    PhaseBank bank;
    double alpha = 0.0;
    arma::cx_mat f_dd;
    arma::cx_mat f_bb;

    /// Analog stage S * C, antennas x n_rf.
    arma::cx_mat analog() const { return sw.cx() * bank.C; }

    /// Effective transmit block of user k on subcarrier f (columns follow the
    /// user-major block convention, block index k + K * f).
    arma::cx_mat tx_block(arma::uword user, arma::uword subcarrier,
                          arma::uword n_users, arma::uword n_streams) const;
};

enum class AlphaBranch { kNegative, kPositive };

struct AlphaCandidate {
    arma::uword split = 0;  // entries strictly below the threshold when sorted
    double value = 0.0;
    AlphaBranch branch = AlphaBranch::kPositive;
};

/// Sorted view of x = vec(Re(F_opt F_DD^H C^H)) together with the finite
/// candidate scales. A negative-branch candidate at split i is the mean of the
/// first i sorted entries and must lie in [2 x_(i), 2 x_(i+1)) intersected with
/// the negative axis; positive-branch candidates mirror this with suffix means.
/// The two half-infinite boundary intervals are included, which is what makes
/// the candidate set exhaustive.
struct AlphaSearchProblem {
    arma::vec x;
    arma::vec x_sorted;
    std::vector<AlphaCandidate> candidates;
};

AlphaSearchProblem build_alpha_search(const arma::vec& x);

struct AlphaSwitchResult {
    double alpha = 0.0;
    arma::uvec s;             // binary, aligned with x
    double f_min = 0.0;       // attained ||x - alpha s||^2
    arma::uword candidate_set_size = 0;
    bool used_fallback = false;
};

/// Exact minimizer of ||x - alpha s||^2 over real alpha and binary s.
/// O(n log n): sort once, then prefix-sum candidate evaluation. Ties prefer
/// the smaller |alpha| (then the positive sign). Throws std::runtime_error
/// when x is identically zero, since no scale direction exists.
AlphaSwitchResult solve_alpha_switch(const arma::vec& x);

/// Matrix-level wrapper: builds x from (F_opt, F_DD, C) and reshapes the
/// solution back into a switch matrix.
struct AlphaSwitchMatrixResult {
    double alpha = 0.0;
    SwitchMatrix sw;
    double f_min = 0.0;
    arma::uword candidate_set_size = 0;
};

AlphaSwitchMatrixResult solve_alpha_switch(const arma::cx_mat& f_opt,
                                           const arma::cx_mat& f_dd,
                                           const PhaseBank& bank);

/// Switch states implied by a scale: for alpha > 0 an entry switches on iff it
/// exceeds alpha / 2, for alpha < 0 iff it falls below alpha / 2. Entries at
/// exactly alpha / 2 stay off.
arma::uvec threshold_switches(const arma::vec& x, double alpha);

/// Initial semi-unitary digital stage, single-carrier (tall) shape:
/// rows of V^H from the target's SVD, padded with zero rows up to n_rf.
arma::cx_mat init_fdd_sc(const arma::cx_mat& f_opt, arma::uword n_rf);

/// Initial digital stage, multicarrier (wide) shape: the first n_rf right
/// singular vectors of the target, conjugate-transposed.
arma::cx_mat init_fdd_mc(const arma::cx_mat& f_opt, arma::uword n_rf);

struct FddUpdate {
    arma::cx_mat f_dd;
    double trace = 0.0;  // attained alpha * Re tr(F_DD F_opt^H S C), = sum of singular values
};

/// Best column-orthonormal F_DD for fixed (alpha, S): Procrustes solution from
/// the SVD of alpha * F_opt^H S C. Requires alpha != 0.
FddUpdate update_fdd_sc(const arma::cx_mat& f_opt, const SwitchMatrix& sw,
                        const PhaseBank& bank, double alpha);

/// Row-orthonormal counterpart for the wide regime.
FddUpdate update_fdd_mc(const arma::cx_mat& f_opt, const SwitchMatrix& sw,
                        const PhaseBank& bank, double alpha);

/// ||F_opt||_F^2 - 2 alpha Re tr(F_DD F_opt^H S C) + alpha^2 ||S||_F^2.
/// Upper-bounds the true distance ||F_opt - alpha S C F_DD||_F^2 whenever
/// F_DD satisfies the regime's orthonormality constraint.
double surrogate_objective(const arma::cx_mat& f_opt, const HybridPrecoder& hp);

/// Per-run diagnostics. surrogate_trace is non-increasing by construction
/// (both block updates are globally optimal).
struct AltMinReport {
    int iterations = 0;
    std::vector<double> surrogate_trace;
    double true_objective = 0.0;  // final ||F_opt - S C F_BB||_F^2
    bool converged = false;
    std::vector<arma::uword> candidate_set_sizes;
};

/// Full alternating loop: init, then (alpha, S) and F_DD updates until the
/// relative surrogate change drops below tol or max_iter is reached. Does not
/// block-diagonalize or normalize; those are separate stages.
std::pair<HybridPrecoder, AltMinReport> altmin(const arma::cx_mat& f_opt,
                                               const PhaseBank& bank, Regime regime,
                                               double tol = 1e-4, int max_iter = 100);

}  // namespace fpsprec

#endif  // FPSPREC_ALTMIN_HPP
