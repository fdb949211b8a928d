// SPDX-License-Identifier: Apache-2.0
//
// cfris command-line harness: runs Monte-Carlo experiments over random
// drops and emits CSV results plus a JSON manifest. See README.md for the
// experiment kinds, the config-file format, and examples.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

#include "cfris/harness.hpp"

using namespace cfris;

int main(int argc, char** argv) {
    CLI::App app{"cfris: robust joint precoding and RIS phase design for cell-free downlink"};

    std::string preset = "desk";
    std::string config_path;
    std::string experiment = "convergence";
    std::string grid_str;
    std::string schemes_str;
    std::uint64_t seed = 1;
    int drops = 10;
    int threads = 1;
    std::string out_prefix = "results";
    bool redact_runtime = false;
    bool dump_trace = false;
    std::string scenario_dump_path;

    app.add_option("--preset", preset, "configuration preset: desk or table3");
    app.add_option("--config", config_path, "key-value config file applied over the preset");
    app.add_option("--experiment", experiment,
                   "experiment kind: convergence|power_sweep|backhaul_sweep|delta_d_sweep|"
                   "delta_c_sweep|elements_sweep|ris_count_sweep");
    app.add_option("--grid", grid_str, "comma-separated sweep values (default per kind)");
    app.add_option("--schemes", schemes_str,
                   "comma-separated subset of proposed,nonrobust,randphase,cf_no_ris,"
                   "sc_cf,centralized_bs (default all)");
    app.add_option("--seed", seed, "master seed");
    app.add_option("--drops", drops, "number of random drops");
    app.add_option("--threads", threads, "worker threads (drops are the unit of parallelism)");
    app.add_option("--out", out_prefix, "output prefix for <prefix>.csv and <prefix>.json");
    app.add_flag("--redact-runtime", redact_runtime,
                 "zero the runtime_s column for byte-stable regression diffs");
    app.add_flag("--dump-trace", dump_trace,
                 "also write the proposed scheme's convergence trace for drop 0");
    app.add_option("--dump-scenario", scenario_dump_path,
                   "write drop 0's topology and channels as a text fixture and exit");
    CLI11_PARSE(app, argc, argv);

    try {
        SystemConfig cfg = preset_config(preset);
        if (!config_path.empty()) cfg = load_config_file(config_path, cfg);
        cfg.validate();

        ExperimentSpec spec;
        spec.kind = parse_experiment(experiment);
        spec.master_seed = seed;
        spec.n_drops = drops;
        spec.threads = threads;
        spec.out_prefix = out_prefix;
        spec.redact_runtime = redact_runtime;
        if (!grid_str.empty()) {
            std::stringstream ss(grid_str);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) spec.grid.push_back(std::stod(tok));
        }
        if (!schemes_str.empty()) {
            std::stringstream ss(schemes_str);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) spec.schemes.push_back(tok);
        }

        if (!scenario_dump_path.empty()) {
            const auto drop = detail_harness::make_drop(cfg, seed, 0, 0);
            std::ofstream os(scenario_dump_path);
            if (!os) throw std::runtime_error("cannot open " + scenario_dump_path);
            dump_scenario(os, drop.topo, drop.channels);
            std::printf("scenario fixture written to %s\n", scenario_dump_path.c_str());
            return 0;
        }

        const RunResultTable table = run_experiment(spec, cfg);
        const auto paths = emit(table, out_prefix);

        if (dump_trace) {
            const SystemConfig cfg0 =
                detail_harness::apply_grid(cfg, spec.kind, table.spec.grid.front());
            const auto drop = detail_harness::make_drop(cfg0, seed, 0, 0);
            auto [sol, est] = run_scheme("proposed", drop, cfg0, seed, 0, 0);
            (void)est;
            const std::string trace_path = out_prefix + "_trace_drop0.csv";
            std::ofstream ts(trace_path);
            dump_traces(ts, sol.traces);
            std::printf("trace written to %s\n", trace_path.c_str());
        }

        // console summary: mean worst-case sum rate per (scheme, grid value)
        std::map<std::pair<std::string, double>, std::pair<double, int>> agg;
        int feasible_rows = 0;
        for (const auto& r : table.rows) {
            auto& slot = agg[{r.scheme, r.grid_value}];
            slot.first += r.wc_sum_rate_mbps;
            slot.second += 1;
            feasible_rows += r.feasible ? 1 : 0;
        }
        std::printf("%-16s %12s %18s\n", "scheme", grid_param_name(spec.kind),
                    "avg_wc_rate_mbps");
        for (const auto& [key, val] : agg)
            std::printf("%-16s %12g %18.3f\n", key.first.c_str(), key.second,
                        val.first / val.second);
        std::printf("rows: %zu (%d feasible) -> %s, %s\n", table.rows.size(), feasible_rows,
                    paths[0].c_str(), paths[1].c_str());
        if (near_field_clamps().load() > 0)
            std::fprintf(stderr, "note: %ld near-field path-loss clamps\n",
                         near_field_clamps().load());

        return table.all_completed() ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
