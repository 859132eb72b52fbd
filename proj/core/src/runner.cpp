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

#include "fpsprec/runner.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fpsprec/rng.hpp"

namespace fpsprec {

namespace {

using nlohmann::json;

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

// Round-trip exact decimal formatting for CSV cells.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json manifest_json(const RunManifest& m) {
    return json{{"config_path", m.config_path},
                {"sweep", m.sweep},
                {"algorithms", m.algorithms},
                {"sweep_values", m.sweep_values},
                {"realizations", m.realizations},
                {"output_path", m.output_path},
                {"seed", m.seed},
                {"paper_scale", m.paper_scale},
                {"n_threads", m.n_threads},
                {"timestamp", m.timestamp},
                {"version", kVersion}};
}

json config_json(const SystemConfig& c) {
    return json{{"n_tx_antennas", c.n_tx_antennas},
                {"n_rx_antennas", c.n_rx_antennas},
                {"n_users", c.n_users},
                {"n_subcarriers", c.n_subcarriers},
                {"n_streams", c.n_streams},
                {"n_rf_tx", c.n_rf_tx},
                {"n_rf_rx", c.n_rf_rx},
                {"n_shifters", c.n_shifters},
                {"snr_db", c.snr_db},
                {"rng_seed", c.rng_seed}};
}

}  // namespace

std::vector<double> default_sweep_values(const std::string& sweep) {
    if (sweep == "snr") return {-15.0, -10.0, -5.0, 0.0, 5.0, 10.0};
    if (sweep == "nc") return {5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
    return {};
}

std::string csv_body_for_comparison(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.front() == '#') continue;
        // runtime_ms is the last field and is wall-clock measurement; the
        // determinism contract covers everything before it.
        const auto comma = line.rfind(',');
        out << (comma == std::string::npos ? line : line.substr(0, comma)) << '\n';
    }
    return out.str();
}

int cmd_run(const RunManifest& manifest_in, std::ostream& log) {
    RunManifest manifest = manifest_in;
    if (manifest.timestamp.empty()) manifest.timestamp = iso_timestamp();

    SystemConfig cfg;
    SweepOptions opts;
    try {
        if (!manifest.config_path.empty()) {
            const ConfigFile file = parse_config_file(manifest.config_path);
            cfg = file.system;
            opts.channel = file.channel;
            opts.combiner_mode = file.combiner_mode;
        } else {
            cfg = SystemConfig::desk_profile();
        }
        if (manifest.paper_scale) {
            const SystemConfig paper = SystemConfig::paper_scale_profile();
            cfg.n_tx_antennas = paper.n_tx_antennas;
            cfg.tx_grid = paper.tx_grid;
            cfg.n_subcarriers = paper.n_subcarriers;
        }
        cfg.rng_seed = manifest.seed;
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        const std::string what = e.what();
        log << "error: " << what << "\n";
        return what.find("constraint violated") != std::string::npos ? kExitInfeasible
                                                                     : kExitBadConfig;
    }
    opts.n_threads = manifest.n_threads;

    SweepSpec sweep;
    if (manifest.sweep == "snr") sweep.variable = SweepVariable::kSnrDb;
    else if (manifest.sweep == "nc") sweep.variable = SweepVariable::kNumShifters;
    else if (manifest.sweep == "single") sweep.variable = SweepVariable::kSingle;
    else {
        log << "error: unknown sweep type '" << manifest.sweep << "'\n";
        return kExitBadConfig;
    }
    sweep.values = manifest.sweep_values.empty() ? default_sweep_values(manifest.sweep)
                                                 : manifest.sweep_values;

    std::vector<EvalResult> results;
    try {
        for (const auto& algo : manifest.algorithms)
            if (!algorithm_known(algo)) {
                log << "error: unknown algorithm '" << algo << "'\n";
                return kExitBadConfig;
            }
        // One timed call per sweep point x algorithm keeps per-row runtimes.
        std::vector<double> points =
            sweep.variable == SweepVariable::kSingle ? std::vector<double>{0.0}
                                                     : sweep.values;
        for (const double value : points) {
            SweepSpec one = sweep;
            one.values = {value};
            for (const auto& algo : manifest.algorithms) {
                const auto t0 = std::chrono::steady_clock::now();
                auto partial =
                    run_sweep(cfg, one, {algo}, manifest.realizations, opts);
                const auto t1 = std::chrono::steady_clock::now();
                const double ms =
                    std::chrono::duration<double, std::milli>(t1 - t0).count();
                for (auto& r : partial) {
                    r.runtime_ms = ms;
                    log << r.sweep_var << "=" << r.sweep_value << " algo=" << algo
                        << " mean_se=" << r.mean_se << " (" << ms << " ms)\n";
                    results.push_back(std::move(r));
                }
            }
        }
    } catch (const std::invalid_argument& e) {
        const std::string what = e.what();
        log << "error: " << what << "\n";
        return what.find("constraint violated") != std::string::npos ? kExitInfeasible
                                                                     : kExitBadConfig;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kExitBadConfig;
    }

    // CSV: '#' header lines echo the manifest; rows are deterministic except
    // for the trailing runtime_ms measurement.
    std::ofstream csv(manifest.output_path);
    if (!csv) {
        log << "error: cannot write '" << manifest.output_path << "'\n";
        return kExitIoError;
    }
    csv << "# fpsprec " << kVersion << " results\n";
    csv << "# manifest: " << manifest_json(manifest).dump() << "\n";
    csv << "sweep_var,sweep_value,algorithm,mean_se,std_se,n_realizations,"
           "mean_iterations,mean_candidate_set_size,runtime_ms\n";
    for (const auto& r : results) {
        csv << r.sweep_var << ',' << fmt(r.sweep_value) << ',' << r.algorithm_tag
            << ',' << fmt(r.mean_se) << ',' << fmt(r.std_se) << ','
            << r.per_realization.size() << ',' << fmt(r.mean_iterations) << ','
            << fmt(r.mean_candidate_set_size) << ',' << fmt(r.runtime_ms) << '\n';
    }
    csv.close();

    json side;
    side["manifest"] = manifest_json(manifest);
    side["se_normalization"] = "per_subcarrier_average";
    side["results"] = json::array();
    for (const auto& r : results) {
        json jr;
        jr["sweep_var"] = r.sweep_var;
        jr["sweep_value"] = r.sweep_value;
        jr["algorithm"] = r.algorithm_tag;
        jr["mean_se"] = r.mean_se;
        jr["std_se"] = r.std_se;
        jr["mean_iterations"] = r.mean_iterations;
        jr["mean_candidate_set_size"] = r.mean_candidate_set_size;
        jr["runtime_ms"] = r.runtime_ms;
        jr["config"] = config_json(r.config_echo);
        jr["failed_realizations"] = r.failed_realizations;
        jr["per_realization"] = json::array();
        for (const auto& p : r.per_realization)
            jr["per_realization"].push_back(
                {{"index", p.realization_index},
                 {"se", p.spectral_efficiency_bits_per_s_per_hz},
                 {"iterations", p.altmin_iterations},
                 {"mean_candidate_set_size", p.mean_candidate_set_size}});
        side["results"].push_back(std::move(jr));
    }
    std::string json_path = manifest.output_path;
    const auto dot = json_path.rfind('.');
    json_path = (dot == std::string::npos ? json_path : json_path.substr(0, dot)) +
                ".json";
    std::ofstream js(json_path);
    if (!js) {
        log << "error: cannot write '" << json_path << "'\n";
        return kExitIoError;
    }
    js << side.dump(2) << "\n";

    log << "wrote " << manifest.output_path << " and " << json_path << "\n";
    return kExitOk;
}

int cmd_verify(const OracleBudget& budget, arma::uword n_cases, std::uint64_t seed,
               std::ostream& log, const AlphaSolverFn& solver_in) {
    const AlphaSolverFn solver =
        solver_in ? solver_in
                  : [](const arma::vec& x) { return solve_alpha_switch(x); };
    if (n_cases == 0) {
        log << "verify: no cases requested, vacuous pass (warning)\n";
        return kExitOk;
    }

    Rng rng(seed);
    const arma::uword n = std::min<arma::uword>(budget.max_n, 12);
    double max_gap_brute = 0.0;
    double max_gap_grid = 0.0;
    arma::uword grid_cases = std::min<arma::uword>(n_cases, 200);

    for (arma::uword c = 0; c < n_cases; ++c) {
        arma::vec x(n);
        const double scale = std::exp(rng.uniform(-1.0, 2.0));
        for (auto& v : x) v = scale * rng.normal();
        if (c % 7 == 3) x[0] = x[n - 1];  // exercise tied entries

        const AlphaSwitchResult closed = solver(x);
        const BruteForceResult brute = brute_force_alpha_s(x, budget);
        const double gap = std::abs(closed.f_min - brute.f);
        max_gap_brute = std::max(max_gap_brute, gap);
        if (gap > 1e-9) {
            log << "verify: FAIL on case " << c << " |f_closed - f_brute| = " << gap
                << "\n  x = " << x.t();
            log << "  closed: alpha=" << closed.alpha << " f=" << closed.f_min
                << "\n  brute:  alpha=" << brute.alpha << " f=" << brute.f << "\n";
            return kExitVerifyFailed;
        }

        if (c < grid_cases) {
            const GridScanResult grid = grid_alpha_scan(x, budget);
            const double ggap = closed.f_min - grid.f;
            max_gap_grid = std::max(max_gap_grid, ggap);
            if (ggap > 1e-6) {
                log << "verify: FAIL on case " << c
                    << " grid scan beat the closed form by " << ggap
                    << "\n  x = " << x.t();
                return kExitVerifyFailed;
            }
        }
    }
    log << "verify: PASS " << n_cases << " cases (n=" << n << "), max |f_closed - "
        << "f_brute| = " << max_gap_brute << ", max grid advantage = "
        << max_gap_grid << "\n";
    return kExitOk;
}

}  // namespace fpsprec
