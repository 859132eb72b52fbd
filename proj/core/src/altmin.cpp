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

#include "fpsprec/altmin.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fpsprec/svd_util.hpp"

namespace fpsprec {

PhaseBank build_phase_bank(arma::uword n_shifters, arma::uword n_rf) {
    arma::vec phases(n_shifters);
    for (arma::uword i = 0; i < n_shifters; ++i)
        phases[i] = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n_shifters);
    return build_phase_bank(phases, n_rf);
}

PhaseBank build_phase_bank(const arma::vec& phases, arma::uword n_rf) {
    if (phases.n_elem == 0 || n_rf == 0)
        throw std::invalid_argument("phase bank needs at least one shifter and one RF chain");
    PhaseBank bank;
    bank.n_shifters = phases.n_elem;
    bank.n_rf = n_rf;
    bank.phases = phases;
    bank.c.set_size(bank.n_shifters);
    const double scale = 1.0 / std::sqrt(static_cast<double>(bank.n_shifters));
    for (arma::uword i = 0; i < bank.n_shifters; ++i)
        bank.c[i] = scale * std::complex<double>(std::cos(phases[i]), std::sin(phases[i]));
    bank.C.zeros(bank.n_shifters * n_rf, n_rf);
    for (arma::uword j = 0; j < n_rf; ++j)
        bank.C.submat(j * bank.n_shifters, j, (j + 1) * bank.n_shifters - 1, j) = bank.c;
    return bank;
}

Regime regime_for(arma::uword n_columns, arma::uword n_rf) {
    return n_columns <= n_rf ? Regime::kSingleCarrier : Regime::kMulticarrier;
}

arma::cx_mat HybridPrecoder::tx_block(arma::uword user, arma::uword subcarrier,
                                      arma::uword n_users, arma::uword n_streams) const {
    const arma::uword c0 = (user + n_users * subcarrier) * n_streams;
    return analog() * f_bb.cols(c0, c0 + n_streams - 1);
}

AlphaSearchProblem build_alpha_search(const arma::vec& x) {
    AlphaSearchProblem p;
    p.x = x;
    p.x_sorted = arma::sort(x, "ascend");
    const arma::uword n = x.n_elem;
    const arma::vec& xs = p.x_sorted;

    arma::vec prefix(n + 1);
    prefix[0] = 0.0;
    for (arma::uword i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + xs[i];
    const double total = prefix[n];
    const double inf = std::numeric_limits<double>::infinity();

    // Negative branch: split i in 1..n, candidate = mean of the first i sorted
    // entries, feasible in [2 x_(i), 2 x_(i+1)] with x_(n+1) = +inf.
    for (arma::uword i = 1; i <= n; ++i) {
        const double cand = prefix[i] / static_cast<double>(i);
        if (!(cand < 0.0)) continue;
        const double lo = 2.0 * xs[i - 1];
        const double hi = (i < n) ? 2.0 * xs[i] : inf;
        if (cand >= lo && cand <= hi)
            p.candidates.push_back({i, cand, AlphaBranch::kNegative});
    }
    // Positive branch: split i in 0..n-1, candidate = mean of the last n - i
    // entries, feasible in [2 x_(i), 2 x_(i+1)] with x_(0) = -inf.
    for (arma::uword i = 0; i < n; ++i) {
        const double cand = (total - prefix[i]) / static_cast<double>(n - i);
        if (!(cand > 0.0)) continue;
        const double lo = (i == 0) ? -inf : 2.0 * xs[i - 1];
        const double hi = 2.0 * xs[i];
        if (cand >= lo && cand <= hi)
            p.candidates.push_back({i, cand, AlphaBranch::kPositive});
    }
    return p;
}

arma::uvec threshold_switches(const arma::vec& x, double alpha) {
    arma::uvec s(x.n_elem, arma::fill::zeros);
    const double half = alpha / 2.0;
    if (alpha > 0.0) {
        for (arma::uword i = 0; i < x.n_elem; ++i) s[i] = x[i] > half ? 1 : 0;
    } else if (alpha < 0.0) {
        for (arma::uword i = 0; i < x.n_elem; ++i) s[i] = x[i] < half ? 1 : 0;
    }
    return s;
}

namespace {

// Objective of the thresholded solution at a given scale. This is the true
// value of (alpha, S(alpha)); the quadratic piece formulas are only used to
// rank candidates.
double objective_at(const arma::vec& x, double alpha) {
    double f = 0.0;
    const double half = alpha / 2.0;
    if (alpha > 0.0) {
        for (const double v : x) f += (v > half) ? (v - alpha) * (v - alpha) : v * v;
    } else {
        for (const double v : x) f += (v < half) ? (v - alpha) * (v - alpha) : v * v;
    }
    return f;
}

struct ScoredAlpha {
    double alpha = 0.0;
    double f = std::numeric_limits<double>::infinity();
    bool valid = false;
};

// Ties prefer the smaller magnitude, then the positive sign.
void consider(ScoredAlpha& best, double alpha, double f) {
    if (!best.valid || f < best.f ||
        (f == best.f && (std::abs(alpha) < std::abs(best.alpha) ||
                         (std::abs(alpha) == std::abs(best.alpha) && alpha > best.alpha)))) {
        best = {alpha, f, true};
    }
}

// Exact per-interval fallback: minimize each quadratic piece over its interval
// clamped to the matching sign region, then rescore through the threshold
// rule. Covers interval endpoints, which the candidate set deliberately
// excludes, so it stays exact when ties in x degenerate the candidate test.
ScoredAlpha clamped_interval_minimum(const arma::vec& xs, const arma::vec& prefix,
                                     const arma::vec& x) {
    const arma::uword n = xs.n_elem;
    const double total = prefix[n];
    ScoredAlpha best;
    for (arma::uword i = 1; i <= n; ++i) {  // negative branch
        const double lo = 2.0 * xs[i - 1];
        const double hi = (i < n) ? std::min(2.0 * xs[i], 0.0) : 0.0;
        if (lo > hi) continue;
        const double axis = prefix[i] / static_cast<double>(i);
        const double alpha = std::clamp(axis, lo, hi);
        if (alpha == 0.0) continue;
        consider(best, alpha, objective_at(x, alpha));
    }
    for (arma::uword i = 0; i < n; ++i) {  // positive branch
        const double lo = (i == 0) ? 0.0 : std::max(2.0 * xs[i - 1], 0.0);
        const double hi = 2.0 * xs[i];
        if (lo > hi) continue;
        const double axis = (total - prefix[i]) / static_cast<double>(n - i);
        const double alpha = std::clamp(axis, lo, hi);
        if (alpha == 0.0) continue;
        consider(best, alpha, objective_at(x, alpha));
    }
    return best;
}

}  // namespace

AlphaSwitchResult solve_alpha_switch(const arma::vec& x) {
    if (x.n_elem == 0) throw std::invalid_argument("empty coefficient vector");
    if (!x.is_finite()) throw std::invalid_argument("non-finite coefficient vector");
    if (arma::abs(x).max() == 0.0)
        throw std::runtime_error(
            "degenerate target: Re(F_opt F_DD^H C^H) vanished, the phase bank cannot "
            "represent any component of the target");

    AlphaSearchProblem problem = build_alpha_search(x);
    const arma::uword n = x.n_elem;
    const arma::vec& xs = problem.x_sorted;
    arma::vec prefix(n + 1);
    prefix[0] = 0.0;
    for (arma::uword i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + xs[i];
    const double sumsq = arma::dot(x, x);
    const double total = prefix[n];

    AlphaSwitchResult res;
    res.candidate_set_size = problem.candidates.size();

    ScoredAlpha best;
    for (const AlphaCandidate& cand : problem.candidates) {
        // Closed-form value of the quadratic piece the candidate lives on.
        double f;
        if (cand.branch == AlphaBranch::kNegative) {
            const double a = static_cast<double>(cand.split);
            f = a * cand.value * cand.value - 2.0 * prefix[cand.split] * cand.value + sumsq;
        } else {
            const double a = static_cast<double>(n - cand.split);
            f = a * cand.value * cand.value -
                2.0 * (total - prefix[cand.split]) * cand.value + sumsq;
        }
        consider(best, cand.value, f);
    }
    if (!best.valid) {
        best = clamped_interval_minimum(xs, prefix, x);
        res.used_fallback = true;
    }
    if (!best.valid)
        throw std::runtime_error("scale search found no feasible candidate");

    res.alpha = best.alpha;
    res.s = threshold_switches(x, res.alpha);
    res.f_min = objective_at(x, res.alpha);
    return res;
}

AlphaSwitchMatrixResult solve_alpha_switch(const arma::cx_mat& f_opt,
                                           const arma::cx_mat& f_dd,
                                           const PhaseBank& bank) {
    const arma::cx_mat y = f_opt * f_dd.t() * bank.C.t();  // N_t x (N_c n_rf)
    const arma::vec x = arma::vectorise(arma::real(y));
    const AlphaSwitchResult vecres = solve_alpha_switch(x);

    AlphaSwitchMatrixResult out;
    out.alpha = vecres.alpha;
    out.f_min = vecres.f_min;
    out.candidate_set_size = vecres.candidate_set_size;
    out.sw.s = arma::reshape(vecres.s, y.n_rows, y.n_cols);
    return out;
}

arma::cx_mat init_fdd_sc(const arma::cx_mat& f_opt, arma::uword n_rf) {
    const arma::uword m = f_opt.n_cols;
    if (m > n_rf)
        throw std::invalid_argument("single-carrier init needs n_columns <= n_rf");
    const SvdFactors svd = thin_svd(f_opt);
    arma::cx_mat f_dd(n_rf, m, arma::fill::zeros);
    f_dd.rows(0, m - 1) = svd.v.t();
    return f_dd;
}

arma::cx_mat init_fdd_mc(const arma::cx_mat& f_opt, arma::uword n_rf) {
    const arma::uword m = f_opt.n_cols;
    if (m < n_rf)
        throw std::invalid_argument("multicarrier init needs n_columns >= n_rf");
    const SvdFactors svd = thin_svd(f_opt);
    if (svd.v.n_cols < n_rf)
        throw std::invalid_argument("target rank budget smaller than n_rf");
    return arma::cx_mat(svd.v.cols(0, n_rf - 1)).t();
}

namespace {

// Both regimes share the same Procrustes expression; only the shape of b
// differs. The scale's sign is folded into the SVD target so a negative alpha
// still maximizes alpha * Re tr(F_DD F_opt^H S C).
FddUpdate procrustes_update(const arma::cx_mat& f_opt, const SwitchMatrix& sw,
                            const PhaseBank& bank, double alpha) {
    if (alpha == 0.0)
        throw std::invalid_argument("digital-stage update needs a nonzero scale");
    const arma::cx_mat b = alpha * (f_opt.t() * sw.cx() * bank.C);  // M x n_rf
    const SvdFactors svd = thin_svd(b);
    FddUpdate out;
    out.trace = arma::accu(svd.sigma);
    out.f_dd = svd.v * svd.u.t();
    return out;
}

}  // namespace

FddUpdate update_fdd_sc(const arma::cx_mat& f_opt, const SwitchMatrix& sw,
                        const PhaseBank& bank, double alpha) {
    if (f_opt.n_cols > bank.n_rf)
        throw std::invalid_argument("single-carrier update needs n_columns <= n_rf");
    return procrustes_update(f_opt, sw, bank, alpha);
}

FddUpdate update_fdd_mc(const arma::cx_mat& f_opt, const SwitchMatrix& sw,
                        const PhaseBank& bank, double alpha) {
    if (f_opt.n_cols < bank.n_rf)
        throw std::invalid_argument("multicarrier update needs n_columns >= n_rf");
    return procrustes_update(f_opt, sw, bank, alpha);
}

double surrogate_objective(const arma::cx_mat& f_opt, const HybridPrecoder& hp) {
    const double f_opt_sq = std::pow(arma::norm(f_opt, "fro"), 2);
    const arma::cx_mat cross = hp.f_dd * f_opt.t() * hp.sw.cx() * hp.bank.C;
    const double trace = arma::trace(arma::real(cross));
    const double s_sq = static_cast<double>(hp.sw.n_active());
    return f_opt_sq - 2.0 * hp.alpha * trace + hp.alpha * hp.alpha * s_sq;
}

std::pair<HybridPrecoder, AltMinReport> altmin(const arma::cx_mat& f_opt,
                                               const PhaseBank& bank, Regime regime,
                                               double tol, int max_iter) {
    if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
    const arma::uword m = f_opt.n_cols;
    if (regime == Regime::kSingleCarrier && m > bank.n_rf)
        throw std::invalid_argument("single-carrier regime needs n_columns <= n_rf");
    if (regime == Regime::kMulticarrier && m < bank.n_rf)
        throw std::invalid_argument("multicarrier regime needs n_columns >= n_rf");

    HybridPrecoder hp;
    hp.bank = bank;
    hp.f_dd = (regime == Regime::kSingleCarrier) ? init_fdd_sc(f_opt, bank.n_rf)
                                                 : init_fdd_mc(f_opt, bank.n_rf);

    AltMinReport report;
    const double f_opt_sq = std::pow(arma::norm(f_opt, "fro"), 2);
    double g_prev = std::numeric_limits<double>::infinity();

    for (int k = 0; k < max_iter; ++k) {
        const AlphaSwitchMatrixResult step = solve_alpha_switch(f_opt, hp.f_dd, bank);
        hp.alpha = step.alpha;
        hp.sw = step.sw;
        const FddUpdate upd = (regime == Regime::kSingleCarrier)
                                  ? update_fdd_sc(f_opt, hp.sw, bank, hp.alpha)
                                  : update_fdd_mc(f_opt, hp.sw, bank, hp.alpha);
        hp.f_dd = upd.f_dd;

        const double g = f_opt_sq - 2.0 * upd.trace +
                         hp.alpha * hp.alpha * static_cast<double>(hp.sw.n_active());
        report.surrogate_trace.push_back(g);
        report.candidate_set_sizes.push_back(step.candidate_set_size);

        if (std::abs(g - g_prev) <= tol * std::max(1.0, std::abs(g))) {
            report.converged = true;
            break;
        }
        g_prev = g;
    }

    report.iterations = static_cast<int>(report.surrogate_trace.size());
    hp.f_bb = hp.alpha * hp.f_dd;
    report.true_objective =
        std::pow(arma::norm(f_opt - hp.analog() * hp.f_bb, "fro"), 2);
    return {std::move(hp), std::move(report)};
}

}  // namespace fpsprec
