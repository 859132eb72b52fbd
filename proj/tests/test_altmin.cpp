// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <limits>

#include "fpsprec/altmin.hpp"
#include "test_helpers.hpp"

using namespace fpsprec;
using fpsprec::test::fro_sq;
using fpsprec::test::random_cx_mat;
using fpsprec::test::random_semi_unitary;

namespace {

SwitchMatrix random_switches(Rng& rng, arma::uword rows, arma::uword cols) {
    SwitchMatrix sw;
    sw.s.set_size(rows, cols);
    for (auto& v : sw.s) v = (rng.uniform01() < 0.5) ? 1 : 0;
    return sw;
}

}  // namespace

TEST_CASE("surrogate objective: degenerate configurations") {
    Rng rng(51);
    const arma::uword n_t = 8, n_rf = 2, n_c = 4, m = 2;
    HybridPrecoder hp;
    hp.bank = build_phase_bank(n_c, n_rf);
    hp.sw = random_switches(rng, n_t, n_c * n_rf);
    hp.f_dd = random_semi_unitary(rng, n_rf, m);
    const arma::cx_mat f_opt = random_cx_mat(rng, n_t, m);

    SUBCASE("zero scale leaves only the constant term") {
        hp.alpha = 0.0;
        CHECK(surrogate_objective(f_opt, hp) ==
              doctest::Approx(fro_sq(f_opt)).epsilon(1e-12));
    }
    SUBCASE("all-off switches annihilate both variable terms") {
        hp.alpha = 1.7;
        hp.sw.s.zeros();
        CHECK(surrogate_objective(f_opt, hp) ==
              doctest::Approx(fro_sq(f_opt)).epsilon(1e-12));
    }
}

TEST_CASE("surrogate objective: upper-bounds the true distance") {
    Rng rng(52);
    for (int c = 0; c < 100; ++c) {
        const arma::uword n_rf = 2 + (rng.next_u64() % 3);
        const arma::uword m = 1 + (rng.next_u64() % n_rf);
        const arma::uword n_t = n_rf + 2 + (rng.next_u64() % 6);
        const arma::uword n_c = 1 + (rng.next_u64() % 6);
        HybridPrecoder hp;
        hp.bank = build_phase_bank(n_c, n_rf);
        hp.sw = random_switches(rng, n_t, n_c * n_rf);
        hp.f_dd = random_semi_unitary(rng, n_rf, m);
        hp.alpha = rng.normal();
        const arma::cx_mat f_opt = random_cx_mat(rng, n_t, m);
        const double truth = fro_sq(f_opt - hp.alpha * hp.analog() * hp.f_dd);
        CHECK(surrogate_objective(f_opt, hp) >= truth - 1e-9);
    }
}

TEST_CASE("altmin: exact factorization is a fixed point of both block updates") {
    // A representable target stays put when the loop starts on it. This is a
    // genuine fixed point only when the analog stage preserves norms, i.e. a
    // single-phase bank with a square digital stage; for a wider bank the
    // surrogate's ||S||^2 term displaces the optimum (see the stationarity
    // test below).
    Rng rng(53);
    const arma::uword n_t = 12, n_rf = 3, n_c = 1, m = 3;
    const PhaseBank bank = build_phase_bank(n_c, n_rf);
    const SwitchMatrix sw = random_switches(rng, n_t, n_c * n_rf);
    const arma::cx_mat f_dd = random_semi_unitary(rng, n_rf, m);
    const double alpha = 1.4;
    const arma::cx_mat f_opt = alpha * sw.cx() * bank.C * f_dd;

    const auto step = solve_alpha_switch(f_opt, f_dd, bank);
    CHECK(step.alpha == doctest::Approx(alpha).epsilon(1e-12));
    CHECK(arma::accu(step.sw.s != sw.s) == 0);
    CHECK(step.f_min < 1e-12);

    const FddUpdate upd = update_fdd_sc(f_opt, step.sw, bank, step.alpha);
    CHECK(arma::norm(upd.f_dd - f_dd, "fro") < 1e-10);

    HybridPrecoder hp;
    hp.bank = bank;
    hp.sw = step.sw;
    hp.alpha = step.alpha;
    hp.f_dd = upd.f_dd;
    CHECK(surrogate_objective(f_opt, hp) < 1e-9);  // the surrogate floor
    CHECK(test::fro_sq(f_opt - hp.alpha * hp.analog() * hp.f_dd) < 1e-9);
}

TEST_CASE("altmin: representable targets end at a stationary point") {
    // The loop descends to a stationary point of the surrogate; with a
    // single-phase bank the surrogate equals the true distance exactly, so
    // the two reported values must agree even when the loop stalls short of
    // the global optimum (binary fitting is nonconvex).
    Rng rng(57);
    const arma::uword n_t = 12, n_rf = 3, n_c = 1, m = 3;
    const PhaseBank bank = build_phase_bank(n_c, n_rf);
    const SwitchMatrix sw = random_switches(rng, n_t, n_c * n_rf);
    const arma::cx_mat f_dd = random_semi_unitary(rng, n_rf, m);
    const arma::cx_mat f_opt = 1.4 * sw.cx() * bank.C * f_dd;

    auto [hp, report] = altmin(f_opt, bank, Regime::kSingleCarrier, 1e-6, 100);
    CHECK(report.converged);
    CHECK(report.true_objective ==
          doctest::Approx(report.surrogate_trace.back()).epsilon(1e-9));
}

TEST_CASE("altmin: monotone surrogate and convergence on random instances") {
    Rng rng(54);
    const arma::uword n_t = 16, n_rf = 2, n_c = 8, m = 2;
    const PhaseBank bank = build_phase_bank(n_c, n_rf);
    for (int c = 0; c < 10; ++c) {
        const arma::cx_mat f_opt = random_cx_mat(rng, n_t, m);
        auto [hp, report] = altmin(f_opt, bank, Regime::kSingleCarrier, 1e-4, 100);
        CHECK(report.converged);
        for (size_t i = 1; i < report.surrogate_trace.size(); ++i)
            CHECK(report.surrogate_trace[i] <= report.surrogate_trace[i - 1] + 1e-9);
        CHECK(report.iterations == static_cast<int>(report.surrogate_trace.size()));
        CHECK(report.candidate_set_sizes.size() == report.surrogate_trace.size());
    }
}

TEST_CASE("altmin: infinite tolerance stops after one iteration") {
    Rng rng(55);
    const arma::uword n_t = 10, n_rf = 2, n_c = 4, m = 2;
    const PhaseBank bank = build_phase_bank(n_c, n_rf);
    const arma::cx_mat f_opt = random_cx_mat(rng, n_t, m);
    auto [hp, report] = altmin(f_opt, bank, Regime::kSingleCarrier,
                               std::numeric_limits<double>::infinity(), 100);
    CHECK(report.iterations == 1);
    CHECK(report.converged);
    REQUIRE(hp.f_dd.n_rows == n_rf);
    REQUIRE(hp.f_dd.n_cols == m);
    REQUIRE(hp.f_bb.n_rows == n_rf);
    REQUIRE(hp.sw.s.n_rows == n_t);
    REQUIRE(hp.sw.s.n_cols == n_c * n_rf);
}

TEST_CASE("altmin: multicarrier regime keeps rows orthonormal") {
    Rng rng(56);
    const arma::uword n_t = 12, n_rf = 3, n_c = 8, m = 10;
    const PhaseBank bank = build_phase_bank(n_c, n_rf);
    const arma::cx_mat f_opt = random_cx_mat(rng, n_t, m);
    auto [hp, report] = altmin(f_opt, bank, Regime::kMulticarrier, 1e-4, 100);
    const arma::cx_mat eye(n_rf, n_rf, arma::fill::eye);
    CHECK(arma::norm(hp.f_dd * hp.f_dd.t() - eye, "fro") < 1e-10);
    for (size_t i = 1; i < report.surrogate_trace.size(); ++i)
        CHECK(report.surrogate_trace[i] <= report.surrogate_trace[i - 1] + 1e-9);
}

TEST_CASE("altmin: regime selection by shape") {
    CHECK(regime_for(2, 4) == Regime::kSingleCarrier);
    CHECK(regime_for(4, 4) == Regime::kSingleCarrier);
    CHECK(regime_for(6, 4) == Regime::kMulticarrier);
}
