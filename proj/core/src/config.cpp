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

#include "fpsprec/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fpsprec {

ArrayGrid default_grid(arma::uword n_antennas) {
    arma::uword best = 1;
    for (arma::uword r = 1; r * r <= n_antennas; ++r) {
        if (n_antennas % r == 0) best = r;
    }
    return {best, n_antennas / best};
}

void SystemConfig::validate() const {
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw std::invalid_argument("invalid system configuration: " + what);
    };
    require(n_tx_antennas > 0 && n_rx_antennas > 0, "antenna counts must be positive");
    require(n_users > 0 && n_subcarriers > 0 && n_streams > 0,
            "user/subcarrier/stream counts must be positive");
    require(n_rf_tx > 0 && n_rf_rx > 0 && n_shifters > 0,
            "RF chain and shifter counts must be positive");
    require(n_users * n_streams <= n_rf_tx,
            "constraint violated: n_users * n_streams <= n_rf_tx");
    require(n_rf_tx < n_tx_antennas, "constraint violated: n_rf_tx < n_tx_antennas");
    require(n_streams <= n_rf_rx, "constraint violated: n_streams <= n_rf_rx");
    require(n_rf_rx < n_rx_antennas, "constraint violated: n_rf_rx < n_rx_antennas");
    if (tx_grid.specified())
        require(tx_grid.rows * tx_grid.cols == n_tx_antennas,
                "tx_grid does not factor n_tx_antennas");
    if (rx_grid.specified())
        require(rx_grid.rows * rx_grid.cols == n_rx_antennas,
                "rx_grid does not factor n_rx_antennas");
}

ArrayGrid SystemConfig::resolved_tx_grid() const {
    return tx_grid.specified() ? tx_grid : default_grid(n_tx_antennas);
}

ArrayGrid SystemConfig::resolved_rx_grid() const {
    return rx_grid.specified() ? rx_grid : default_grid(n_rx_antennas);
}

SystemConfig SystemConfig::desk_profile() {
    SystemConfig cfg;
    cfg.n_tx_antennas = 64;
    cfg.n_rx_antennas = 16;
    cfg.n_users = 2;
    cfg.n_subcarriers = 16;
    cfg.n_streams = 2;
    cfg.n_rf_tx = 4;
    cfg.n_rf_rx = 2;
    cfg.n_shifters = 30;
    cfg.snr_db = 0.0;
    cfg.rng_seed = 1;
    cfg.tx_grid = {8, 8};
    cfg.rx_grid = {4, 4};
    return cfg;
}

SystemConfig SystemConfig::paper_scale_profile() {
    SystemConfig cfg;
    cfg.n_tx_antennas = 144;
    cfg.n_rx_antennas = 16;
    cfg.n_users = 4;
    cfg.n_subcarriers = 128;
    cfg.n_streams = 2;
    cfg.n_rf_tx = 8;
    cfg.n_rf_rx = 2;
    cfg.n_shifters = 30;
    cfg.snr_db = 0.0;
    cfg.rng_seed = 1;
    cfg.tx_grid = {12, 12};
    cfg.rx_grid = {4, 4};
    return cfg;
}

namespace {

ArrayGrid parse_grid(const std::string& value, const std::string& key) {
    const auto x = value.find('x');
    if (x == std::string::npos)
        throw std::invalid_argument("config key '" + key + "' expects ROWSxCOLS, got '" +
                                    value + "'");
    ArrayGrid g;
    g.rows = std::stoull(value.substr(0, x));
    g.cols = std::stoull(value.substr(x + 1));
    return g;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

ConfigFile parse_config_text(const std::string& text) {
    ConfigFile out;
    std::istringstream in(text);
    std::string line;
    arma::uword lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        " is not of the form key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "n_tx_antennas") out.system.n_tx_antennas = std::stoull(value);
            else if (key == "n_rx_antennas") out.system.n_rx_antennas = std::stoull(value);
            else if (key == "n_users") out.system.n_users = std::stoull(value);
            else if (key == "n_subcarriers") out.system.n_subcarriers = std::stoull(value);
            else if (key == "n_streams") out.system.n_streams = std::stoull(value);
            else if (key == "n_rf_tx") out.system.n_rf_tx = std::stoull(value);
            else if (key == "n_rf_rx") out.system.n_rf_rx = std::stoull(value);
            else if (key == "n_shifters") out.system.n_shifters = std::stoull(value);
            else if (key == "snr_db") out.system.snr_db = std::stod(value);
            else if (key == "rng_seed") out.system.rng_seed = std::stoull(value);
            else if (key == "tx_grid") out.system.tx_grid = parse_grid(value, key);
            else if (key == "rx_grid") out.system.rx_grid = parse_grid(value, key);
            else if (key == "n_clusters") out.channel.n_clusters = std::stoull(value);
            else if (key == "n_rays") out.channel.n_rays = std::stoull(value);
            else if (key == "angular_spread_deg") out.channel.angular_spread_deg = std::stod(value);
            else if (key == "combiner_mode") {
                if (value == "fully-digital") out.combiner_mode = CombinerMode::kFullyDigital;
                else if (value == "hybrid-fps") out.combiner_mode = CombinerMode::kHybridFps;
                else throw std::invalid_argument("config key 'combiner_mode' expects "
                                                 "fully-digital or hybrid-fps, got '" + value + "'");
            } else {
                throw std::invalid_argument("unknown config key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("config key '" + key + "' has unparsable value '" +
                                        value + "'");
        }
    }
    return out;
}

ConfigFile parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string combiner_mode_name(CombinerMode mode) {
    return mode == CombinerMode::kFullyDigital ? "fully-digital" : "hybrid-fps";
}

}  // namespace fpsprec
