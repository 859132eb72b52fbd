// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "fpsprec/precoding.hpp"
#include "test_helpers.hpp"

using namespace fpsprec;
using fpsprec::test::random_cx_mat;

namespace {

SystemConfig mu_cfg() {
    SystemConfig cfg;
    cfg.n_tx_antennas = 16;
    cfg.n_rx_antennas = 4;
    cfg.n_users = 2;
    cfg.n_subcarriers = 2;
    cfg.n_streams = 1;
    cfg.n_rf_tx = 4;
    cfg.n_rf_rx = 1;
    cfg.n_shifters = 8;
    cfg.tx_grid = {4, 4};
    cfg.rx_grid = {2, 2};
    return cfg;
}

ChannelSet synthetic_channels(const SystemConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    ChannelSet set;
    set.n_users = cfg.n_users;
    set.n_subcarriers = cfg.n_subcarriers;
    set.channels.resize(cfg.n_users * cfg.n_subcarriers);
    for (auto& h : set.channels)
        h = random_cx_mat(rng, cfg.n_rx_antennas, cfg.n_tx_antennas);
    return set;
}

}  // namespace

TEST_CASE("target precoder: diagonal single-user channel picks the top mode") {
    SystemConfig cfg;
    cfg.n_tx_antennas = 2;
    cfg.n_rx_antennas = 2;
    cfg.n_users = 1;
    cfg.n_subcarriers = 1;
    cfg.n_streams = 1;
    cfg.n_rf_tx = 1;
    cfg.n_rf_rx = 1;
    cfg.n_shifters = 2;
    cfg.tx_grid = {1, 2};
    cfg.rx_grid = {1, 2};

    ChannelSet set;
    set.n_users = 1;
    set.n_subcarriers = 1;
    set.channels = {arma::cx_mat{{std::complex<double>(2.0, 0.0), {0.0, 0.0}},
                                 {{0.0, 0.0}, std::complex<double>(1.0, 0.0)}}};
    const TargetPrecoder target = fully_digital_precoder(set, cfg);
    REQUIRE(target.f_opt.n_rows == 2);
    REQUIRE(target.f_opt.n_cols == 1);
    CHECK(std::abs(target.f_opt(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(target.f_opt(1, 0)) < 1e-12);
}

TEST_CASE("target precoder: block diagonalization nulls the other users") {
    const SystemConfig cfg = mu_cfg();
    const ChannelSet set = synthetic_channels(cfg, 11);
    const TargetPrecoder target = fully_digital_precoder(set, cfg);
    for (arma::uword f = 0; f < cfg.n_subcarriers; ++f) {
        for (arma::uword k = 0; k < cfg.n_users; ++k) {
            for (arma::uword j = 0; j < cfg.n_users; ++j) {
                if (j == k) continue;
                CHECK(arma::norm(set.at(j, f) * target.block(k, f), "fro") < 1e-9);
            }
        }
    }
}

TEST_CASE("target precoder: dominant direction beats random unit vectors") {
    SystemConfig cfg = mu_cfg();
    cfg.n_users = 1;
    cfg.n_subcarriers = 1;
    cfg.n_rf_tx = 2;
    cfg.n_streams = 1;
    Rng rng(13);
    ChannelSet set;
    set.n_users = 1;
    set.n_subcarriers = 1;
    set.channels = {random_cx_mat(rng, cfg.n_rx_antennas, cfg.n_tx_antennas)};

    const TargetPrecoder target = fully_digital_precoder(set, cfg);
    const double gain = arma::norm(set.at(0, 0) * target.block(0, 0), "fro");
    for (int t = 0; t < 100; ++t) {
        arma::cx_vec v = random_cx_mat(rng, cfg.n_tx_antennas, 1);
        v /= arma::norm(v);
        CHECK(arma::norm(set.at(0, 0) * v) <= gain + 1e-12);
    }
}

TEST_CASE("target precoder: every block carries power N_s") {
    SystemConfig cfg = mu_cfg();
    cfg.n_streams = 2;
    cfg.n_rf_tx = 4;
    cfg.n_rf_rx = 2;
    const ChannelSet set = synthetic_channels(cfg, 17);
    const TargetPrecoder target = fully_digital_precoder(set, cfg);
    for (arma::uword f = 0; f < cfg.n_subcarriers; ++f)
        for (arma::uword k = 0; k < cfg.n_users; ++k)
            CHECK(test::fro_sq(target.block(k, f)) ==
                  doctest::Approx(cfg.n_streams).epsilon(1e-10));
}

TEST_CASE("target precoder: infeasible null space raises") {
    SystemConfig cfg = mu_cfg();
    cfg.n_tx_antennas = 6;  // (K-1) * N_r = 4 leaves a 2-dim null space
    cfg.tx_grid = {2, 3};
    cfg.n_streams = 1;
    cfg.n_rf_tx = 4;
    SystemConfig bad = cfg;
    bad.n_tx_antennas = 4;  // null space vanishes
    bad.tx_grid = {2, 2};
    bad.n_rf_tx = 3;
    const ChannelSet ok_set = synthetic_channels(cfg, 19);
    CHECK_NOTHROW(fully_digital_precoder(ok_set, cfg));
    const ChannelSet bad_set = synthetic_channels(bad, 19);
    CHECK_THROWS_AS(fully_digital_precoder(bad_set, bad), std::invalid_argument);
}

TEST_CASE("combiners: rank-one effective channel") {
    SystemConfig cfg;
    cfg.n_tx_antennas = 3;
    cfg.n_rx_antennas = 2;
    cfg.n_users = 1;
    cfg.n_subcarriers = 1;
    cfg.n_streams = 1;
    cfg.n_rf_tx = 1;
    cfg.n_rf_rx = 1;
    cfg.n_shifters = 2;
    cfg.tx_grid = {1, 3};
    cfg.rx_grid = {1, 2};

    // Effective channel H * block = [1; 0].
    ChannelSet set;
    set.n_users = 1;
    set.n_subcarriers = 1;
    arma::cx_mat h(2, 3, arma::fill::zeros);
    h(0, 0) = 1.0;
    h(1, 1) = 0.5;
    set.channels = {h};
    TargetPrecoder target;
    target.n_users = 1;
    target.n_subcarriers = 1;
    target.n_streams = 1;
    target.f_opt = arma::cx_mat(3, 1, arma::fill::zeros);
    target.f_opt(0, 0) = 1.0;

    const CombinerSet combiners =
        design_combiners(set, target, cfg, CombinerMode::kFullyDigital);
    const arma::cx_mat w = combiners.effective(0, 0);
    REQUIRE(w.n_rows == 2);
    REQUIRE(w.n_cols == 1);
    CHECK(std::abs(w(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(w(1, 0)) < 1e-12);
}

TEST_CASE("combiners: hybrid receive stage stays bounded") {
    SystemConfig cfg = mu_cfg();
    cfg.n_rx_antennas = 8;
    cfg.rx_grid = {2, 4};
    cfg.n_rf_rx = 2;
    cfg.n_streams = 1;
    const ChannelSet set = synthetic_channels(cfg, 23);
    const TargetPrecoder target = fully_digital_precoder(set, cfg);
    const CombinerSet combiners =
        design_combiners(set, target, cfg, CombinerMode::kHybridFps);

    const double entry_cap = std::sqrt(static_cast<double>(cfg.n_shifters)) + 1e-12;
    for (arma::uword k = 0; k < cfg.n_users; ++k) {
        const arma::cx_mat& w_rf = combiners.w_rf[k];
        REQUIRE(w_rf.n_rows == cfg.n_rx_antennas);
        REQUIRE(w_rf.n_cols == cfg.n_rf_rx);
        REQUIRE(w_rf.is_finite());
        // Each entry is a sum of at most N_c phases of magnitude 1/sqrt(N_c).
        for (const auto& v : w_rf) CHECK(std::abs(v) <= entry_cap);
        for (arma::uword c = 0; c < w_rf.n_cols; ++c)
            CHECK(arma::norm(w_rf.col(c)) <=
                  std::sqrt(static_cast<double>(cfg.n_rx_antennas * cfg.n_shifters)) + 1e-9);
    }
}

TEST_CASE("bd stage: already-orthogonal effective channels keep leakage at zero") {
    SystemConfig cfg = mu_cfg();
    cfg.n_subcarriers = 1;
    // Hand-build a hybrid precoder and combiners giving E_1 = [1, 0], E_2 = [0, 1].
    Rng rng(29);
    ChannelSet set;
    set.n_users = 2;
    set.n_subcarriers = 1;
    set.channels.resize(2);

    PhaseBank bank = build_phase_bank(cfg.n_shifters, cfg.n_rf_tx);
    HybridPrecoder hp;
    hp.bank = bank;
    hp.sw.s.set_size(cfg.n_tx_antennas, cfg.n_shifters * cfg.n_rf_tx);
    for (auto& v : hp.sw.s) v = rng.uniform01() < 0.5 ? 1 : 0;
    hp.alpha = 1.0;
    hp.f_dd = test::random_semi_unitary(rng, cfg.n_rf_tx, 2);
    hp.f_bb = hp.f_dd;

    // Channels chosen so W^H H (S C F_BB) hits the two coordinate rows.
    const arma::cx_mat analog_fbb = hp.analog() * hp.f_bb;  // N_t x 2
    const arma::cx_mat pinv_t = arma::pinv(analog_fbb);     // 2 x N_t
    arma::cx_mat h1(cfg.n_rx_antennas, cfg.n_tx_antennas, arma::fill::zeros);
    arma::cx_mat h2(cfg.n_rx_antennas, cfg.n_tx_antennas, arma::fill::zeros);
    h1.row(0) = pinv_t.row(0);  // user 1 sees only column 1
    h2.row(0) = pinv_t.row(1);
    set.channels[0] = h1;
    set.channels[1] = h2;

    CombinerSet combiners;
    combiners.mode = CombinerMode::kFullyDigital;
    combiners.w_rf = {arma::cx_mat(cfg.n_rx_antennas, cfg.n_rx_antennas, arma::fill::eye),
                      arma::cx_mat(cfg.n_rx_antennas, cfg.n_rx_antennas, arma::fill::eye)};
    arma::cx_mat w(cfg.n_rx_antennas, 1, arma::fill::zeros);
    w(0, 0) = 1.0;
    combiners.w_bb = {{w}, {w}};

    const HybridPrecoder out = bd_baseband(set, hp, combiners, cfg);
    for (arma::uword k = 0; k < 2; ++k) {
        for (arma::uword j = 0; j < 2; ++j) {
            const arma::cx_mat e =
                combiners.effective(j, 0).t() * set.at(j, 0) *
                out.tx_block(k, 0, cfg.n_users, cfg.n_streams);
            if (j == k) CHECK(arma::norm(e, "fro") > 1e-3);
            else CHECK(arma::norm(e, "fro") < 1e-10);
        }
    }
}

TEST_CASE("bd stage: random feasible instances leak below 1e-8") {
    SystemConfig cfg = mu_cfg();
    cfg.n_streams = 1;
    const ChannelSet set = synthetic_channels(cfg, 31);
    const TargetPrecoder target = fully_digital_precoder(set, cfg);
    const PhaseBank bank = build_phase_bank(cfg.n_shifters, cfg.n_rf_tx);
    auto [hp, report] =
        altmin(target.f_opt, bank, regime_for(cfg.n_columns(), cfg.n_rf_tx));
    const CombinerSet combiners =
        design_combiners(set, target, cfg, CombinerMode::kFullyDigital);
    const HybridPrecoder out = bd_baseband(set, hp, combiners, cfg);

    for (arma::uword f = 0; f < cfg.n_subcarriers; ++f)
        for (arma::uword k = 0; k < cfg.n_users; ++k)
            for (arma::uword j = 0; j < cfg.n_users; ++j) {
                if (j == k) continue;
                const arma::cx_mat leak = combiners.effective(j, f).t() * set.at(j, f) *
                                          out.tx_block(k, f, cfg.n_users, cfg.n_streams);
                CHECK(arma::norm(leak, "fro") < 1e-8);
            }
}

TEST_CASE("bd stage: single user passes through unchanged") {
    SystemConfig cfg = mu_cfg();
    cfg.n_users = 1;
    cfg.n_rf_tx = 2;
    const ChannelSet set = synthetic_channels(cfg, 37);
    const TargetPrecoder target = fully_digital_precoder(set, cfg);
    const PhaseBank bank = build_phase_bank(cfg.n_shifters, cfg.n_rf_tx);
    auto [hp, report] =
        altmin(target.f_opt, bank, regime_for(cfg.n_columns(), cfg.n_rf_tx));
    const CombinerSet combiners =
        design_combiners(set, target, cfg, CombinerMode::kFullyDigital);
    const HybridPrecoder out = bd_baseband(set, hp, combiners, cfg);
    CHECK(arma::norm(out.f_bb - hp.f_bb, "fro") == 0.0);
}

TEST_CASE("normalization: scale factor and exact power") {
    SystemConfig cfg = mu_cfg();
    cfg.n_streams = 2;
    cfg.n_rf_rx = 2;
    // K * N_s * F = 2 * 2 * 2 = 8; force ||S C F_BB|| = 2 to get scale 2... the
    // frozen case instead checks the definitional posterior power.
    const ChannelSet set = synthetic_channels(cfg, 41);
    const TargetPrecoder target = fully_digital_precoder(set, cfg);
    const PhaseBank bank = build_phase_bank(cfg.n_shifters, cfg.n_rf_tx);
    auto [hp, report] =
        altmin(target.f_opt, bank, regime_for(cfg.n_columns(), cfg.n_rf_tx));
    const HybridPrecoder out = normalize_digital(hp, cfg);
    CHECK(test::fro_sq(out.analog() * out.f_bb) ==
          doctest::Approx(static_cast<double>(cfg.n_columns())).epsilon(1e-9));

    // Direct scale check: a baseband with ||S C F_BB|| = 2 against a power
    // budget of 16 doubles.
    SystemConfig tiny = mu_cfg();
    tiny.n_subcarriers = 4;
    tiny.n_streams = 2;
    tiny.n_rf_rx = 2;  // K*Ns*F = 16
    HybridPrecoder manual;
    manual.bank = build_phase_bank(1, 1);
    manual.sw.s = arma::umat(1, 1, arma::fill::ones);
    manual.alpha = 1.0;
    manual.f_dd = arma::cx_mat(1, 16, arma::fill::zeros);
    manual.f_dd(0, 0) = 2.0;  // ||S C F_BB||_F = 2
    manual.f_bb = manual.f_dd;
    const HybridPrecoder scaled = normalize_digital(manual, tiny);
    CHECK(std::abs(scaled.f_bb(0, 0)) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("normalization: all-off switches raise") {
    SystemConfig cfg = mu_cfg();
    HybridPrecoder hp;
    hp.bank = build_phase_bank(cfg.n_shifters, cfg.n_rf_tx);
    hp.sw.s = arma::umat(cfg.n_tx_antennas, cfg.n_shifters * cfg.n_rf_tx,
                         arma::fill::zeros);
    hp.alpha = 1.0;
    hp.f_dd = arma::cx_mat(cfg.n_rf_tx, cfg.n_columns(), arma::fill::ones);
    hp.f_bb = hp.f_dd;
    CHECK_THROWS_AS(normalize_digital(hp, cfg), std::runtime_error);
}
