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

// Monte-Carlo experiment orchestration: seeded drops, parameter sweeps,
// the six schemes on identical per-drop data, and CSV/JSON emission.
// Drops are the unit of parallelism; per-drop RNG streams are derived
// from (master seed, drop), so results are identical for any thread
// count and rows are merged in a fixed order.

#ifndef CFRIS_HARNESS_HPP
#define CFRIS_HARNESS_HPP

#include <atomic>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "baselines.hpp"
#include "scenario.hpp"

namespace cfris {

enum class ExperimentKind {
    convergence,
    power_sweep,
    backhaul_sweep,
    delta_d_sweep,
    delta_c_sweep,
    elements_sweep,
    ris_count_sweep
};

inline const char* experiment_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::convergence: return "convergence";
        case ExperimentKind::power_sweep: return "power_sweep";
        case ExperimentKind::backhaul_sweep: return "backhaul_sweep";
        case ExperimentKind::delta_d_sweep: return "delta_d_sweep";
        case ExperimentKind::delta_c_sweep: return "delta_c_sweep";
        case ExperimentKind::elements_sweep: return "elements_sweep";
        case ExperimentKind::ris_count_sweep: return "ris_count_sweep";
    }
    return "?";
}

inline ExperimentKind parse_experiment(const std::string& s) {
    for (auto k : {ExperimentKind::convergence, ExperimentKind::power_sweep,
                   ExperimentKind::backhaul_sweep, ExperimentKind::delta_d_sweep,
                   ExperimentKind::delta_c_sweep, ExperimentKind::elements_sweep,
                   ExperimentKind::ris_count_sweep})
        if (s == experiment_name(k)) return k;
    throw std::invalid_argument("unknown experiment: " + s);
}

inline const std::vector<std::string>& all_schemes() {
    static const std::vector<std::string> s = {"proposed",  "nonrobust", "randphase",
                                               "cf_no_ris", "sc_cf",     "centralized_bs"};
    return s;
}

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::convergence;
    std::vector<double> grid;          // empty: defaults for the kind
    std::vector<std::string> schemes;  // empty: all six
    int n_drops = 10;
    std::uint64_t master_seed = 1;
    int threads = 1;
    std::string out_prefix = "results";
    bool redact_runtime = false;  // zero the runtime column for byte-stable diffs

    void validate() const {
        if (n_drops < 1) throw std::invalid_argument("ExperimentSpec: n_drops >= 1");
        if (threads < 1) throw std::invalid_argument("ExperimentSpec: threads >= 1");
        for (const auto& s : schemes)
            if (std::find(all_schemes().begin(), all_schemes().end(), s) ==
                all_schemes().end())
                throw std::invalid_argument("ExperimentSpec: unknown scheme " + s);
    }
};

inline std::vector<double> default_grid(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::convergence: return {0.0};
        case ExperimentKind::power_sweep: return {20.0, 25.0, 30.0, 35.0, 40.0};
        case ExperimentKind::backhaul_sweep: return {50.0, 100.0, 200.0, 400.0};
        case ExperimentKind::delta_d_sweep: return {0.0, 0.02, 0.05, 0.08, 0.1};
        case ExperimentKind::delta_c_sweep: return {0.0, 0.02, 0.04, 0.06};
        case ExperimentKind::elements_sweep: return {4.0, 8.0, 12.0, 16.0};
        case ExperimentKind::ris_count_sweep: return {1.0, 2.0, 4.0};
    }
    return {0.0};
}

inline const char* grid_param_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::convergence: return "none";
        case ExperimentKind::power_sweep: return "P_dbm";
        case ExperimentKind::backhaul_sweep: return "C_mbps";
        case ExperimentKind::delta_d_sweep: return "delta_d";
        case ExperimentKind::delta_c_sweep: return "delta_c";
        case ExperimentKind::elements_sweep: return "M";
        case ExperimentKind::ris_count_sweep: return "L";
    }
    return "?";
}

struct ResultRow {
    std::string scheme;
    std::string grid_param;
    double grid_value = 0.0;
    int drop = 0;
    double wc_sum_rate_mbps = 0.0;
    double sampled_wc_mbps = 0.0;
    double nominal_mbps = 0.0;
    int iters_ao = 0;
    double runtime_s = 0.0;
    bool feasible = false;
    bool errored = false;        // not emitted; drives the exit code
    std::string error;           // manifest only
};

struct RunResultTable {
    ExperimentSpec spec;
    SystemConfig base_config;
    std::vector<ResultRow> rows;

    bool all_completed() const {
        for (const auto& r : rows)
            if (r.errored) return false;
        return true;
    }
};

namespace detail_harness {

inline bool grid_changes_dims(ExperimentKind k) {
    return k == ExperimentKind::elements_sweep || k == ExperimentKind::ris_count_sweep;
}

inline SystemConfig apply_grid(SystemConfig cfg, ExperimentKind k, double g) {
    switch (k) {
        case ExperimentKind::power_sweep: cfg.power_dbm = g; break;
        case ExperimentKind::backhaul_sweep: cfg.backhaul_mbps = g; break;
        case ExperimentKind::delta_d_sweep: cfg.delta_d = g; break;
        case ExperimentKind::delta_c_sweep: cfg.delta_c = g; break;
        case ExperimentKind::elements_sweep:
            cfg.dims.elements_per_ris = static_cast<int>(g);
            break;
        case ExperimentKind::ris_count_sweep: {
            // total element count is held fixed while the surfaces split up
            const int total = cfg.dims.elements_per_ris * cfg.dims.n_ris;
            cfg.dims.n_ris = static_cast<int>(g);
            cfg.dims.elements_per_ris = std::max(1, total / cfg.dims.n_ris);
            break;
        }
        default: break;
    }
    return cfg;
}

struct DropData {
    Topology topo;
    ChannelSet channels;
    CascadedChannel cascaded;
    CsiEstimate est;
};

inline DropData make_drop(const SystemConfig& cfg, std::uint64_t seed, int drop,
                          std::uint64_t grid_salt) {
    DropData d;
    RngStream topo_rng(derive_seed(seed, static_cast<std::uint64_t>(drop), grid_salt, 1));
    d.topo = generate_topology(cfg, topo_rng);
    RngStream chan_rng(derive_seed(seed, static_cast<std::uint64_t>(drop), grid_salt, 2));
    d.channels = generate_channels(d.topo, cfg.fading, cfg, chan_rng);
    d.cascaded = build_cascaded(d.channels);
    RngStream csi_rng(derive_seed(seed, static_cast<std::uint64_t>(drop), grid_salt, 3));
    d.est = generate_csi(d.channels, d.cascaded, cfg.delta_d, cfg.delta_c, csi_rng);
    return d;
}

/// centralized-BS variant of a drop: one AP at the origin with all antennas
inline DropData make_centralized_drop(const SystemConfig& ccfg, const Topology& base_topo,
                                      std::uint64_t seed, int drop, std::uint64_t grid_salt) {
    DropData d;
    d.topo = base_topo;
    d.topo.ap_positions = {{0.0, 0.0, ccfg.ap_height_m}};
    RngStream chan_rng(derive_seed(seed, static_cast<std::uint64_t>(drop), grid_salt, 7));
    d.channels = generate_channels(d.topo, ccfg.fading, ccfg, chan_rng);
    d.cascaded = build_cascaded(d.channels);
    RngStream csi_rng(derive_seed(seed, static_cast<std::uint64_t>(drop), grid_salt, 8));
    d.est = generate_csi(d.channels, d.cascaded, ccfg.delta_d, ccfg.delta_c, csi_rng);
    return d;
}

}  // namespace detail_harness

/// Runs one scheme on prepared drop data. Returns the solution plus the
/// estimate set the scheme must be evaluated against.
inline std::pair<DesignSolution, CsiEstimate> run_scheme(const std::string& scheme,
                                                         const detail_harness::DropData& drop,
                                                         const SystemConfig& cfg,
                                                         std::uint64_t seed, int drop_idx,
                                                         std::uint64_t grid_salt) {
    RngStream rng(derive_seed(seed, static_cast<std::uint64_t>(drop_idx), grid_salt, 4));
    if (scheme == "proposed") return {ao_solve(drop.est, cfg, rng), drop.est};
    if (scheme == "nonrobust") return {nonrobust_design(drop.est, cfg, rng), drop.est};
    if (scheme == "randphase") return {randphase_design(drop.est, cfg, rng), drop.est};
    if (scheme == "cf_no_ris")
        return {cf_no_ris_design(drop.est, cfg, rng), strip_ris(drop.est)};
    if (scheme == "sc_cf") return {sc_cf_design(drop.est, cfg, rng), drop.est};
    if (scheme == "centralized_bs") {
        const SystemConfig ccfg = make_centralized_config(cfg);
        const auto cdrop =
            detail_harness::make_centralized_drop(ccfg, drop.topo, seed, drop_idx, grid_salt);
        return {centralized_bs_design(cdrop.est, ccfg, rng), cdrop.est};
    }
    throw std::invalid_argument("unknown scheme: " + scheme);
}

/// Full experiment: every (grid point, scheme) on identical per-drop data,
/// deterministic for a fixed master seed regardless of thread count.
inline RunResultTable run_experiment(const ExperimentSpec& spec_in, const SystemConfig& cfg) {
    ExperimentSpec spec = spec_in;
    spec.validate();
    cfg.validate();
    if (spec.grid.empty()) spec.grid = default_grid(spec.kind);
    if (spec.schemes.empty()) spec.schemes = all_schemes();

    RunResultTable table;
    table.spec = spec;
    table.base_config = cfg;

    const int n_grid = static_cast<int>(spec.grid.size());
    const int n_schemes = static_cast<int>(spec.schemes.size());
    std::vector<std::vector<ResultRow>> per_drop(spec.n_drops);

    std::atomic<int> next_drop{0};
    auto worker = [&] {
        for (;;) {
            const int d = next_drop.fetch_add(1);
            if (d >= spec.n_drops) return;
            std::vector<ResultRow>& rows = per_drop[d];
            for (int gi = 0; gi < n_grid; ++gi) {
                const double g = spec.grid[gi];
                const SystemConfig cfg_g = detail_harness::apply_grid(cfg, spec.kind, g);
                const std::uint64_t grid_salt =
                    detail_harness::grid_changes_dims(spec.kind)
                        ? static_cast<std::uint64_t>(gi) + 1
                        : 0;
                const auto drop =
                    detail_harness::make_drop(cfg_g, spec.master_seed, d, grid_salt);
                for (int si = 0; si < n_schemes; ++si) {
                    const std::string& scheme = spec.schemes[si];
                    ResultRow row;
                    row.scheme = scheme;
                    row.grid_param = grid_param_name(spec.kind);
                    row.grid_value = g;
                    row.drop = d;
                    const auto t0 = std::chrono::steady_clock::now();
                    try {
                        auto [sol, eval_est] =
                            run_scheme(scheme, drop, cfg_g, spec.master_seed, d, grid_salt);
                        const SystemConfig eval_cfg = (scheme == "centralized_bs")
                                                          ? make_centralized_config(cfg_g)
                                                          : cfg_g;
                        const RVec wc = worst_case_user_rates(sol.W, sol.v.v, eval_est);
                        RngStream eval_rng(derive_seed(spec.master_seed,
                                                       static_cast<std::uint64_t>(d),
                                                       grid_salt * 64 + gi,
                                                       100 + static_cast<std::uint64_t>(si)));
                        const RVec sampled = sampled_worst_case(
                            sol.W, sol.v.v, eval_est, eval_cfg.eval_samples, eval_rng);
                        const RVec nominal = nominal_user_rates(sol.W, sol.v.v, eval_est);
                        row.wc_sum_rate_mbps = wc.sum() * eval_cfg.bandwidth_mhz;
                        row.sampled_wc_mbps = sampled.sum() * eval_cfg.bandwidth_mhz;
                        row.nominal_mbps = nominal.sum() * eval_cfg.bandwidth_mhz;
                        row.iters_ao = sol.ao_iters;
                        // feasibility: the scheme's own audit plus the backhaul
                        // caps re-checked under the evaluation rates
                        bool backhaul_eval_ok = true;
                        if (std::isfinite(eval_cfg.backhaul_mbps)) {
                            const double cap = eval_cfg.backhaul_mbps / eval_cfg.xi;
                            for (int n = 0; n < eval_cfg.dims.n_aps; ++n) {
                                double sum = 0.0;
                                for (int k : sol.clusters.served[n])
                                    sum += wc(k) * eval_cfg.bandwidth_mhz;
                                if (sum > cap + 1e-6) backhaul_eval_ok = false;
                            }
                        }
                        row.feasible = sol.audit.all_ok() && backhaul_eval_ok;
                    } catch (const std::exception& e) {
                        row.errored = true;
                        row.error = e.what();
                        row.feasible = false;
                    }
                    row.runtime_s =
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                            .count();
                    rows.push_back(std::move(row));
                }
            }
        }
    };

    const int n_threads = std::min(spec.threads, spec.n_drops);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // fixed emission order: scheme-major, then grid, then drop
    for (int si = 0; si < n_schemes; ++si)
        for (int gi = 0; gi < n_grid; ++gi)
            for (int d = 0; d < spec.n_drops; ++d)
                for (auto& row : per_drop[d])
                    if (row.scheme == spec.schemes[si] && row.grid_value == spec.grid[gi])
                        table.rows.push_back(row);
    return table;
}

// ---------------------------------------------------------------------------
// Emission: CSV with a fixed column set and a JSON manifest with the full
// configuration, seed, code version, and per-row digests.
// ---------------------------------------------------------------------------

inline constexpr const char* kCsvHeader =
    "scheme,grid_param,grid_value,drop,wc_sum_rate_mbps,sampled_wc_mbps,nominal_mbps,"
    "iters_ao,runtime_s,feasible";

inline std::string format_row(const ResultRow& r, bool redact_runtime) {
    std::ostringstream os;
    os << r.scheme << ',' << r.grid_param << ',' << std::setprecision(9) << r.grid_value
       << ',' << r.drop << ',' << r.wc_sum_rate_mbps << ',' << r.sampled_wc_mbps << ','
       << r.nominal_mbps << ',' << r.iters_ao << ',' << std::fixed << std::setprecision(3)
       << (redact_runtime ? 0.0 : r.runtime_s) << ',' << (r.feasible ? 1 : 0);
    return os.str();
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline nlohmann::json config_to_json(const SystemConfig& c) {
    nlohmann::json j;
    j["n_aps"] = c.dims.n_aps;
    j["antennas_per_ap"] = c.dims.antennas_per_ap;
    j["n_ris"] = c.dims.n_ris;
    j["elements_per_ris"] = c.dims.elements_per_ris;
    j["n_users"] = c.dims.n_users;
    j["cell_radius_m"] = c.cell_radius_m;
    j["bandwidth_mhz"] = c.bandwidth_mhz;
    j["noise_dbm"] = c.noise_dbm;
    j["power_dbm"] = c.power_dbm;
    j["backhaul_mbps"] = std::isfinite(c.backhaul_mbps) ? c.backhaul_mbps : -1.0;
    j["xi"] = c.xi;
    j["delta_d"] = c.delta_d;
    j["delta_c"] = c.delta_c;
    j["rician_kappa"] = c.fading.rician_kappa;
    j["pathloss_ref_db"] = c.fading.pathloss_ref_db;
    j["alpha_direct"] = c.fading.alpha_direct;
    j["alpha_cascaded"] = c.fading.alpha_cascaded;
    j["los_cutoff_m"] = c.fading.los_cutoff_m;
    j["varpi"] = c.algo.varpi;
    j["sca_tol"] = c.algo.sca_tol;
    j["pccp_phi1"] = c.algo.pccp_phi1;
    j["pccp_phi2"] = c.algo.pccp_phi2;
    j["rho0"] = c.algo.rho0;
    j["penalty_scale"] = c.algo.penalty_scale;
    j["rho_max"] = c.algo.rho_max;
    j["mu_th"] = c.algo.mu_th;
    j["max_pccp_iters"] = c.algo.max_pccp_iters;
    j["max_sca_iters"] = c.algo.max_sca_iters;
    j["max_ao_iters"] = c.algo.max_ao_iters;
    j["solver_tol"] = c.solver_tol;
    j["eval_samples"] = c.eval_samples;
    return j;
}

inline constexpr const char* kCodeVersion = "cfris 1.0.0";

/// Writes <prefix>.csv and <prefix>.json. Returns the paths written.
inline std::vector<std::string> emit(const RunResultTable& table,
                                     const std::string& prefix) {
    const std::string csv_path = prefix + ".csv";
    const std::string json_path = prefix + ".json";
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("emit: cannot open " + csv_path);
    csv << kCsvHeader << '\n';
    nlohmann::json digests = nlohmann::json::array();
    nlohmann::json errors = nlohmann::json::array();
    for (const auto& row : table.rows) {
        const std::string line = format_row(row, table.spec.redact_runtime);
        csv << line << '\n';
        std::ostringstream hex;
        hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a(line);
        digests.push_back(hex.str());
        if (row.errored)
            errors.push_back({{"scheme", row.scheme},
                              {"grid_value", row.grid_value},
                              {"drop", row.drop},
                              {"what", row.error}});
    }
    csv.close();
    if (!csv) throw std::runtime_error("emit: write failed for " + csv_path);

    nlohmann::json manifest;
    manifest["code_version"] = kCodeVersion;
    manifest["experiment"] = experiment_name(table.spec.kind);
    manifest["grid"] = table.spec.grid;
    manifest["schemes"] = table.spec.schemes;
    manifest["n_drops"] = table.spec.n_drops;
    manifest["master_seed"] = table.spec.master_seed;
    manifest["threads"] = table.spec.threads;
    manifest["redact_runtime"] = table.spec.redact_runtime;
    manifest["config"] = config_to_json(table.base_config);
    manifest["row_digests"] = digests;
    manifest["errors"] = errors;
    std::ofstream js(json_path);
    if (!js) throw std::runtime_error("emit: cannot open " + json_path);
    js << manifest.dump(2) << '\n';
    if (!js) throw std::runtime_error("emit: write failed for " + json_path);
    return {csv_path, json_path};
}

/// Parses an emitted CSV back into rows (round-trip checks, comparisons).
inline std::vector<ResultRow> parse_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw std::runtime_error("parse_csv: bad header in " + path);
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        ResultRow r;
        auto next = [&] {
            if (!std::getline(ss, field, ','))
                throw std::runtime_error("parse_csv: short row in " + path);
            return field;
        };
        r.scheme = next();
        r.grid_param = next();
        r.grid_value = std::stod(next());
        r.drop = std::stoi(next());
        r.wc_sum_rate_mbps = std::stod(next());
        r.sampled_wc_mbps = std::stod(next());
        r.nominal_mbps = std::stod(next());
        r.iters_ao = std::stoi(next());
        r.runtime_s = std::stod(next());
        r.feasible = std::stoi(next()) != 0;
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace cfris

#endif
