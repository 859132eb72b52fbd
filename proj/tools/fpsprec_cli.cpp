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

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fpsprec/runner.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fpsprec: hybrid precoding with fixed phase shifters and a dynamic "
                 "switch network"};
    app.require_subcommand(1);

    // run ------------------------------------------------------------------
    auto* run = app.add_subcommand("run", "execute a sweep and write CSV + JSON");
    fpsprec::RunManifest manifest;
    std::string algos = "fps,fully-digital";
    std::string sweep_values;
    run->add_option("--config", manifest.config_path, "flat key = value config file");
    run->add_option("--sweep", manifest.sweep, "snr | nc | single")
        ->check(CLI::IsMember({"snr", "nc", "single"}));
    run->add_option("--algos", algos, "comma-separated: fps,fully-digital");
    run->add_option("--sweep-values", sweep_values,
                    "comma-separated sweep points (defaults per sweep type)");
    auto* real_opt =
        run->add_option("--realizations", manifest.realizations, "channel draws per point");
    run->add_option("--seed", manifest.seed, "base RNG seed");
    run->add_option("--out", manifest.output_path, "output CSV path");
    run->add_option("--threads", manifest.n_threads, "parallel realization workers");
    run->add_flag("--paper-scale", manifest.paper_scale,
                  "full-scale profile (144 tx antennas, 128 subcarriers, 1000 "
                  "realizations unless --realizations is given)");

    // verify ---------------------------------------------------------------
    auto* verify = app.add_subcommand(
        "verify", "certify the closed-form scale/switch solver against brute force");
    fpsprec::OracleBudget budget;
    arma::uword n_cases = 1000;
    std::uint64_t vseed = 1;
    verify->add_option("--cases", n_cases, "number of random instances");
    verify->add_option("--seed", vseed, "RNG seed");
    verify->add_option("--n", budget.max_n, "vector length (enumeration cap 24)");
    verify->add_option("--grid-points", budget.grid_points, "grid scan resolution");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        manifest.algorithms = split_csv(algos);
        for (const auto& tok : split_csv(sweep_values)) {
            try {
                manifest.sweep_values.push_back(std::stod(tok));
            } catch (const std::exception&) {
                std::cout << "error: sweep value '" << tok << "' is not a number\n";
                return fpsprec::kExitBadConfig;
            }
        }
        if (manifest.paper_scale && real_opt->count() == 0) manifest.realizations = 1000;
        return fpsprec::cmd_run(manifest, std::cout);
    }
    return fpsprec::cmd_verify(budget, n_cases, vseed, std::cout);
}
