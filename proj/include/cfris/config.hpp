// SPDX-License-Identifier: Apache-2.0
//
// cfris — robust joint AP precoding and RIS phase-shift design for
// cell-free downlink under bounded CSI errors and limited backhaul.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#ifndef CFRIS_CONFIG_HPP
#define CFRIS_CONFIG_HPP

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "types.hpp"

namespace cfris {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

/// Propagation and fading parameters.
struct FadingParams {
    double rician_kappa = 3.0;       // kappa for the cascaded (Rician) links
    double pathloss_ref_db = -30.0;  // path loss at the reference distance, dB
    double ref_distance_m = 1.0;     // d0
    double alpha_direct = 3.75;      // path-loss exponent, AP-user Rayleigh links
    double alpha_cascaded = 2.2;     // path-loss exponent, AP-RIS and RIS-user links
    double los_cutoff_m = 50.0;      // RIS-user LoS drops beyond this distance
};

/// Iterative-algorithm knobs.
struct AlgoOptions {
    double varpi = 1e-3;      // l0 surrogate accuracy parameter
    double sca_tol = 1e-4;    // epsilon: SCA and AO relative-change tolerance
    double pccp_phi1 = 1e-3;  // P-CCP slack-sum tolerance
    double pccp_phi2 = 1e-3;  // P-CCP phase-step tolerance
    // The penalty schedule prices phase movement (the modulus-split slacks
    // charge rho * theta^2 per element-rotation theta), so it starts low
    // and ramps gently; a large rho0 freezes the phases at their start.
    double rho0 = 5e-3;          // initial penalty
    double penalty_scale = 1.5;  // mu > 1
    double rho_max = 1e3;
    double mu_th = 1e-3;      // cluster threshold on ||w_{n,k}||^2
    int max_pccp_iters = 50;
    int max_sca_iters = 50;
    int max_ao_iters = 30;

    void validate() const {
        if (!(varpi > 0.0) || !(sca_tol > 0.0) || !(pccp_phi1 > 0.0) || !(pccp_phi2 > 0.0))
            throw std::invalid_argument("AlgoOptions: tolerances must be positive");
        if (!(penalty_scale > 1.0)) throw std::invalid_argument("AlgoOptions: mu must be > 1");
        if (!(rho_max >= rho0) || !(rho0 > 0.0))
            throw std::invalid_argument("AlgoOptions: need rho_max >= rho0 > 0");
        if (!(mu_th > 0.0)) throw std::invalid_argument("AlgoOptions: mu_th must be positive");
    }
};

/// Full scenario + algorithm configuration. Defaults are the desk-scale
/// setup; preset "table3" matches the larger published setup.
struct SystemConfig {
    Dimensions dims{4, 2, 2, 8, 3};
    double cell_radius_m = 100.0;
    double ap_height_m = 20.0;
    double ris_height_m = 5.0;
    double user_height_m = 1.5;
    double bandwidth_mhz = 10.0;
    double noise_dbm = -80.0;     // per user
    double power_dbm = 30.0;      // per AP
    double backhaul_mbps = 200.0; // per AP
    double xi = 1.1;              // backhaul margin factor
    double delta_d = 0.02;        // direct-channel uncertainty level
    double delta_c = 0.04;        // cascaded-channel uncertainty level
    FadingParams fading;
    AlgoOptions algo;
    double solver_tol = 1e-8;     // relative duality-gap target
    int eval_samples = 500;       // samples for the sampled worst-case column

    double noise_watts() const { return dbm_to_watts(noise_dbm); }
    double power_watts() const { return dbm_to_watts(power_dbm); }
    /// backhaul cap in spectral-efficiency units: C_n / (xi * bandwidth)
    double backhaul_cap_se() const { return backhaul_mbps / (xi * bandwidth_mhz); }

    void validate() const {
        dims.validate();
        algo.validate();
        if (!(cell_radius_m > 0.0)) throw std::invalid_argument("cell_radius_m must be > 0");
        if (!(bandwidth_mhz > 0.0)) throw std::invalid_argument("bandwidth_mhz must be > 0");
        if (!(xi >= 1.0)) throw std::invalid_argument("xi must be >= 1");
        if (delta_d < 0.0 || delta_d >= 1.0 || delta_c < 0.0 || delta_c >= 1.0)
            throw std::invalid_argument("uncertainty levels must lie in [0, 1)");
    }
};

inline SystemConfig desk_config() { return SystemConfig{}; }

inline SystemConfig table3_config() {
    SystemConfig c;
    c.dims = Dimensions{4, 4, 4, 16, 4};
    return c;
}

inline SystemConfig preset_config(const std::string& name) {
    if (name == "desk") return desk_config();
    if (name == "table3") return table3_config();
    throw std::invalid_argument("unknown preset: " + name + " (expected desk|table3)");
}

/// Applies one "key = value" assignment to a config. Throws on unknown keys.
inline void apply_config_key(SystemConfig& c, const std::string& key, const std::string& val) {
    auto d = [&] { return std::stod(val); };
    auto i = [&] { return std::stoi(val); };
    if (key == "n_aps") c.dims.n_aps = i();
    else if (key == "antennas_per_ap") c.dims.antennas_per_ap = i();
    else if (key == "n_ris") c.dims.n_ris = i();
    else if (key == "elements_per_ris") c.dims.elements_per_ris = i();
    else if (key == "n_users") c.dims.n_users = i();
    else if (key == "cell_radius_m") c.cell_radius_m = d();
    else if (key == "ap_height_m") c.ap_height_m = d();
    else if (key == "ris_height_m") c.ris_height_m = d();
    else if (key == "user_height_m") c.user_height_m = d();
    else if (key == "bandwidth_mhz") c.bandwidth_mhz = d();
    else if (key == "noise_dbm") c.noise_dbm = d();
    else if (key == "power_dbm") c.power_dbm = d();
    else if (key == "backhaul_mbps") c.backhaul_mbps = d();
    else if (key == "xi") c.xi = d();
    else if (key == "delta_d") c.delta_d = d();
    else if (key == "delta_c") c.delta_c = d();
    else if (key == "rician_kappa") c.fading.rician_kappa = d();
    else if (key == "pathloss_ref_db") c.fading.pathloss_ref_db = d();
    else if (key == "ref_distance_m") c.fading.ref_distance_m = d();
    else if (key == "alpha_direct") c.fading.alpha_direct = d();
    else if (key == "alpha_cascaded") c.fading.alpha_cascaded = d();
    else if (key == "los_cutoff_m") c.fading.los_cutoff_m = d();
    else if (key == "varpi") c.algo.varpi = d();
    else if (key == "sca_tol") c.algo.sca_tol = d();
    else if (key == "pccp_phi1") c.algo.pccp_phi1 = d();
    else if (key == "pccp_phi2") c.algo.pccp_phi2 = d();
    else if (key == "rho0") c.algo.rho0 = d();
    else if (key == "penalty_scale") c.algo.penalty_scale = d();
    else if (key == "rho_max") c.algo.rho_max = d();
    else if (key == "mu_th") c.algo.mu_th = d();
    else if (key == "max_pccp_iters") c.algo.max_pccp_iters = i();
    else if (key == "max_sca_iters") c.algo.max_sca_iters = i();
    else if (key == "max_ao_iters") c.algo.max_ao_iters = i();
    else if (key == "solver_tol") c.solver_tol = d();
    else if (key == "eval_samples") c.eval_samples = i();
    else throw std::invalid_argument("unknown config key: " + key);
}

/// Parses a key-value config file: one "key = value" per line, '#' comments.
inline SystemConfig load_config_file(const std::string& path, SystemConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r\n") != std::string::npos)
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": expected 'key = value'");
            continue;
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r\n");
            const auto b = s.find_last_not_of(" \t\r\n");
            return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        apply_config_key(base, key, val);
    }
    base.validate();
    return base;
}

}  // namespace cfris

#endif
