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

// Comparison schemes. Every scheme returns a DesignSolution; the harness
// evaluates all of them through the identical worst-case-bound path on
// the scheme's evaluation estimate (the true radii for most schemes, the
// RIS-free estimate for the no-RIS scheme).

#ifndef CFRIS_BASELINES_HPP
#define CFRIS_BASELINES_HPP

#include <algorithm>
#include <limits>
#include <vector>

#include "algorithms.hpp"

namespace cfris {

/// Non-robust scheme: designs as if the estimates were exact. The caller
/// evaluates the returned design under the true radii.
inline DesignSolution nonrobust_design(const CsiEstimate& est, const SystemConfig& cfg,
                                       RngStream& rng) {
    return ao_solve(zero_radii(est), cfg, rng);
}

namespace detail_base {

/// precoding-only pipeline: fixed phases, SCA, cluster refinement with the
/// precoding stage only, then finalization
inline DesignSolution precoding_only_pipeline(const CsiEstimate& est, const SystemConfig& cfg,
                                              DesignIterate it) {
    std::vector<ConvergenceTrace> traces;
    bool suboptimal = false;
    detail_algo::refresh_bounds(it, est);
    detail_algo::refresh_epigraphs(it, cfg);
    detail_algo::clamp_gamma_for_backhaul(it, cfg, nullptr);
    try {
        auto sres = sca_precoding(est, it, cfg);
        traces.push_back(std::move(sres.trace));
    } catch (const std::runtime_error&) {
        suboptimal = true;
    }
    ClusterAssignment clusters = determine_clusters(it.W, cfg.algo.mu_th);
    if (!suboptimal) {
        DesignIterate refined = it;
        for (int n = 0; n < cfg.dims.n_aps; ++n)
            for (int k = 0; k < cfg.dims.n_users; ++k)
                if (!clusters.serves(n, k))
                    refined.W.W.col(k)
                        .segment(static_cast<Eigen::Index>(n) * cfg.dims.antennas_per_ap,
                                 cfg.dims.antennas_per_ap)
                        .setZero();
        try {
            detail_algo::prepare_sca_start(refined, est, cfg, &clusters);
            auto sres = sca_precoding(est, refined, cfg, &clusters);
            traces.push_back(std::move(sres.trace));
            it = std::move(refined);
        } catch (const std::runtime_error&) {
            suboptimal = true;
        }
    }
    return finalize_design(std::move(it), std::move(clusters), est, cfg, std::move(traces),
                           suboptimal);
}

}  // namespace detail_base

/// Random-phase scheme: phases drawn once and never optimized; only the
/// precoders are designed (SCA plus the precoding refinement).
inline DesignSolution randphase_design(const CsiEstimate& est, const SystemConfig& cfg,
                                       RngStream& rng) {
    DesignIterate it = initialize(est, cfg, rng);  // v is i.i.d. uniform phases
    return detail_base::precoding_only_pipeline(est, cfg, std::move(it));
}

/// Cell-free system without surfaces: cascaded estimates and radii are
/// zeroed, then the precoding-only pipeline runs. Evaluate on strip_ris().
inline DesignSolution cf_no_ris_design(const CsiEstimate& est, const SystemConfig& cfg,
                                       RngStream& rng) {
    const CsiEstimate bare = strip_ris(est);
    DesignIterate it = initialize(bare, cfg, rng);
    it.v.v.setOnes();  // inert: the cascaded part is identically zero
    detail_algo::refresh_bounds(it, bare);
    return detail_base::precoding_only_pipeline(bare, cfg, std::move(it));
}

/// Greedy one-user-per-AP assignment by estimated effective channel gain.
inline ClusterAssignment sc_assignment(const CsiEstimate& est, const CVec& v) {
    const Dimensions& d = est.dims;
    Eigen::MatrixXd gain(d.n_aps, d.n_users);
    for (int n = 0; n < d.n_aps; ++n)
        for (int k = 0; k < d.n_users; ++k) {
            const CVec reflected = est.cascaded_hat[n][k].adjoint() * v;
            gain(n, k) = est.direct_hat[n][k].squaredNorm() + reflected.squaredNorm();
        }
    ClusterAssignment out;
    out.served.resize(d.n_aps);
    std::vector<bool> ap_done(d.n_aps, false), user_done(d.n_users, false);
    // first pass: distinct users while any remain
    const int pairs = std::min(d.n_aps, d.n_users);
    for (int it = 0; it < pairs; ++it) {
        int bn = -1, bk = -1;
        double best = -1.0;
        for (int n = 0; n < d.n_aps; ++n) {
            if (ap_done[n]) continue;
            for (int k = 0; k < d.n_users; ++k) {
                if (user_done[k]) continue;
                if (gain(n, k) > best) {
                    best = gain(n, k);
                    bn = n;
                    bk = k;
                }
            }
        }
        out.served[bn].insert(bk);
        ap_done[bn] = true;
        user_done[bk] = true;
    }
    // remaining APs (if any) pick their individually best user
    for (int n = 0; n < d.n_aps; ++n) {
        if (ap_done[n]) continue;
        int bk = 0;
        for (int k = 1; k < d.n_users; ++k)
            if (gain(n, k) > gain(n, bk)) bk = k;
        out.served[n].insert(bk);
    }
    return out;
}

/// Small-cell scheme: each AP serves exactly one user; cross precoders are
/// identically zero through all iterations. Phases and precoders are still
/// optimized under that mask (refinement-style programs with the fixed
/// assignment).
inline DesignSolution sc_cf_design(const CsiEstimate& est, const SystemConfig& cfg,
                                   RngStream& rng) {
    DesignIterate it = initialize(est, cfg, rng);
    const ClusterAssignment assign = sc_assignment(est, it.v.v);

    // mask to the assignment and give each AP's user the full power budget
    const int nt = cfg.dims.antennas_per_ap;
    for (int n = 0; n < cfg.dims.n_aps; ++n) {
        for (int k = 0; k < cfg.dims.n_users; ++k)
            if (!assign.serves(n, k))
                it.W.W.col(k).segment(static_cast<Eigen::Index>(n) * nt, nt).setZero();
        const double p = it.W.ap_power(n);
        if (p > 0.0) {
            const double s = std::sqrt(cfg.power_watts() / p);
            for (int k : assign.served[n])
                it.W.W.col(k).segment(static_cast<Eigen::Index>(n) * nt, nt) *= s;
        }
    }
    detail_algo::refresh_bounds(it, est);
    detail_algo::refresh_epigraphs(it, cfg);

    std::vector<ConvergenceTrace> traces;
    bool suboptimal = false;
    double best_obj = -std::numeric_limits<double>::infinity();
    DesignIterate best = it;
    std::vector<double> history;
    for (int i = 0; i < cfg.algo.max_ao_iters; ++i) {
        it.ao_iters = i + 1;
        try {
            auto pres = pccp_phase(est, it, cfg, &assign);
            traces.push_back(std::move(pres.trace));
            detail_algo::prepare_sca_start(it, est, cfg, &assign);
            auto sres = sca_precoding(est, it, cfg, &assign);
            traces.push_back(std::move(sres.trace));
            history.push_back(sres.objectives.back());
        } catch (const std::runtime_error&) {
            suboptimal = true;
            break;
        }
        if (history.back() > best_obj) {
            best_obj = history.back();
            best = it;
        } else if (history.back() < best_obj - 1e-9 * (1.0 + std::abs(best_obj))) {
            break;
        }
        const size_t h = history.size();
        if (h >= 2 && std::abs(history[h - 1] - history[h - 2]) /
                              std::max(std::abs(history[h - 1]), 1e-12) <=
                          cfg.algo.sca_tol)
            break;
    }
    best.ao_iters = it.ao_iters;
    return finalize_design(std::move(best), assign, est, cfg, std::move(traces), suboptimal);
}

/// Configuration of the centralized single-BS comparison: one AP at the
/// origin with all antennas and the total power budget, no backhaul limit.
inline SystemConfig make_centralized_config(const SystemConfig& cfg) {
    SystemConfig c = cfg;
    c.dims.n_aps = 1;
    c.dims.antennas_per_ap = cfg.dims.n_aps * cfg.dims.antennas_per_ap;
    c.power_dbm = cfg.power_dbm + 10.0 * std::log10(static_cast<double>(cfg.dims.n_aps));
    c.backhaul_mbps = std::numeric_limits<double>::infinity();
    return c;
}

/// Centralized BS scheme: the robust pipeline on the single-AP instance.
/// The caller supplies estimates drawn for the centralized topology.
inline DesignSolution centralized_bs_design(const CsiEstimate& est, const SystemConfig& cfg,
                                            RngStream& rng) {
    return ao_solve(est, cfg, rng);
}

}  // namespace cfris

#endif
