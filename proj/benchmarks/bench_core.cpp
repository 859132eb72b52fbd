// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "fpsprec/evaluate.hpp"
#include "fpsprec/rng.hpp"

using namespace fpsprec;

namespace {

arma::vec coefficients(arma::uword n, std::uint64_t seed) {
    Rng rng(seed);
    arma::vec x(n);
    for (auto& v : x) v = rng.normal();
    return x;
}

void BM_SolveAlphaSwitch(benchmark::State& state) {
    const arma::vec x = coefficients(static_cast<arma::uword>(state.range(0)), 1);
    for (auto _ : state) {
        const auto res = solve_alpha_switch(x);
        benchmark::DoNotOptimize(res.alpha);
    }
}
BENCHMARK(BM_SolveAlphaSwitch)->Arg(1 << 10)->Arg(1 << 13)->Arg(1 << 16);

void BM_AltMinSingleCarrier(benchmark::State& state) {
    SystemConfig cfg;
    cfg.n_tx_antennas = 64;
    cfg.n_rx_antennas = 16;
    cfg.n_users = 1;
    cfg.n_subcarriers = 1;
    cfg.n_streams = 4;
    cfg.n_rf_tx = 4;
    cfg.n_rf_rx = 4;
    cfg.n_shifters = static_cast<arma::uword>(state.range(0));
    cfg.tx_grid = {8, 8};
    cfg.rx_grid = {4, 4};
    const ChannelSet ch = generate_channels(cfg, {}, 3);
    const TargetPrecoder target = fully_digital_precoder(ch, cfg);
    const PhaseBank bank = build_phase_bank(cfg.n_shifters, cfg.n_rf_tx);
    for (auto _ : state) {
        auto [hp, rep] = altmin(target.f_opt, bank, Regime::kSingleCarrier);
        benchmark::DoNotOptimize(rep.iterations);
    }
}
BENCHMARK(BM_AltMinSingleCarrier)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_GenerateChannels(benchmark::State& state) {
    SystemConfig cfg = SystemConfig::desk_profile();
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const ChannelSet ch = generate_channels(cfg, {}, ++seed);
        benchmark::DoNotOptimize(ch.channels.front()(0, 0));
    }
}
BENCHMARK(BM_GenerateChannels)->Unit(benchmark::kMillisecond);

void BM_MultiuserRealization(benchmark::State& state) {
    const SystemConfig cfg = SystemConfig::desk_profile();
    SweepOptions opts;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const auto res = evaluate_realization(cfg, opts, "fps", 0, ++seed);
        benchmark::DoNotOptimize(res.spectral_efficiency_bits_per_s_per_hz);
    }
}
BENCHMARK(BM_MultiuserRealization)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
