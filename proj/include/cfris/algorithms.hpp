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

// Iterative machinery: penalty convex-concave procedure for the phase
// shifts, successive convex approximation for the precoders, and the
// outer alternating loop with cluster refinement, backhaul enforcement,
// and an independent feasibility audit computed purely from the domain
// model (solver outputs are never trusted by the audit).

#ifndef CFRIS_ALGORITHMS_HPP
#define CFRIS_ALGORITHMS_HPP

#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"
#include "model.hpp"
#include "rng.hpp"
#include "solver.hpp"
#include "subproblems.hpp"

namespace cfris {

struct TracePoint {
    double objective = 0.0;   // sum_k log2(1+gamma_k) after the solve
    double slack_sum = 0.0;   // P-CCP penalty slack l1 norm (0 for SCA)
    double penalty = 0.0;     // rho at this iteration (0 for SCA)
    SolveStatus status = SolveStatus::optimal;
    double wall_s = 0.0;
};

struct ConvergenceTrace {
    std::string stage;  // "pccp", "sca", "pccp_refine", "sca_refine"
    std::vector<TracePoint> points;
};

inline void dump_traces(std::ostream& os, const std::vector<ConvergenceTrace>& traces) {
    os << "stage,iter,objective,slack_sum,penalty,status,wall_s\n";
    for (const auto& tr : traces)
        for (size_t i = 0; i < tr.points.size(); ++i) {
            const auto& p = tr.points[i];
            os << tr.stage << ',' << i << ',' << p.objective << ',' << p.slack_sum << ','
               << p.penalty << ',' << status_name(p.status) << ',' << p.wall_s << '\n';
        }
}

struct AuditReport {
    bool power_ok = false;
    bool unit_modulus_ok = false;
    bool backhaul_ok = false;
    bool sinr_ok = false;
    double max_power_excess_w = 0.0;
    double max_modulus_error = 0.0;
    double max_backhaul_excess_mbps = 0.0;
    double min_sinr_margin = 0.0;  // min_k (achieved / declared) - 1

    bool all_ok() const { return power_ok && unit_modulus_ok && backhaul_ok && sinr_ok; }
};

struct DesignSolution {
    Beamformer W;
    PhaseVector v;
    ClusterAssignment clusters;
    RVec gamma;          // declared per-user worst-case SINR bounds
    RVec wc_rates;       // guaranteed per-user rates, bits/s/Hz
    RVec nominal_rates;  // rates pretending the estimates are exact
    std::vector<ConvergenceTrace> traces;
    AuditReport audit;
    int ao_iters = 0;
    bool suboptimal = false;     // a stage failed; best earlier iterate returned
    double power_scale = 1.0;    // backhaul enforcement scale (1 = untouched)
};

/// S_n = {k : ||w_{n,k}||^2 >= mu_th}
inline ClusterAssignment determine_clusters(const Beamformer& bf, double mu_th) {
    if (!(mu_th > 0.0)) throw std::invalid_argument("determine_clusters: mu_th must be > 0");
    ClusterAssignment out;
    out.served.resize(bf.dims.n_aps);
    for (int n = 0; n < bf.dims.n_aps; ++n)
        for (int k = 0; k < bf.dims.n_users; ++k)
            if (bf.ap_block(n, k).squaredNorm() >= mu_th) out.served[n].insert(k);
    return out;
}

namespace detail_algo {

/// recompute the worst-case bound quantities of (W, v) in noise-normalized
/// units: alpha = signal bound, beta = interference bound^2 + 1,
/// gamma = alpha^2 / beta
inline void refresh_bounds(DesignIterate& it, const CsiEstimate& est) {
    const auto sc = detail_sub::make_scaled(est);
    const int K = est.dims.n_users;
    it.alpha.resize(K);
    it.beta.resize(K);
    it.gamma.resize(K);
    for (int k = 0; k < K; ++k) {
        const CVec eff = effective_channel(sc.h_d[k], sc.Z[k], it.v.v);
        const double s = worst_case_signal(eff, it.W.W.col(k), sc.eps_k[k]);
        const double i = interference_upper_bound(eff, it.W.minus_k(k), sc.eps_d[k],
                                                  sc.eps_c[k], est.dims.elements_per_ris,
                                                  est.dims.n_ris);
        it.alpha(k) = s;
        it.beta(k) = i * i + 1.0;
        it.gamma(k) = s * s / it.beta(k);
    }
}

inline void refresh_epigraphs(DesignIterate& it, const SystemConfig& cfg) {
    const int N = cfg.dims.n_aps, K = cfg.dims.n_users;
    it.a.resize(N, K);
    it.b.resize(K);
    for (int n = 0; n < N; ++n)
        for (int k = 0; k < K; ++k)
            it.a(n, k) = l0_smooth(it.W.ap_block(n, k).squaredNorm(), cfg.algo.varpi).value;
    for (int k = 0; k < K; ++k) it.b(k) = std::log2(1.0 + it.gamma(k));
}

/// scales gamma down (if needed) so the backhaul surrogate holds at the
/// SCA starting point: sum_k f_nk log2(1+gamma) <= cap per AP, or the
/// cluster sums in refinement mode
inline void clamp_gamma_for_backhaul(DesignIterate& it, const SystemConfig& cfg,
                                     const ClusterAssignment* clusters) {
    if (!std::isfinite(cfg.backhaul_mbps)) return;
    const double cap = cfg.backhaul_cap_se();
    const int N = cfg.dims.n_aps, K = cfg.dims.n_users;
    Eigen::MatrixXd fw(N, K);
    for (int n = 0; n < N; ++n)
        for (int k = 0; k < K; ++k)
            fw(n, k) = clusters ? (clusters->serves(n, k) ? 1.0 : 0.0)
                                : l0_smooth(it.W.ap_block(n, k).squaredNorm(),
                                            cfg.algo.varpi).value;
    auto feasible = [&](double tau) {
        for (int n = 0; n < N; ++n) {
            double sum = 0.0;
            for (int k = 0; k < K; ++k)
                sum += fw(n, k) * std::log2(1.0 + tau * it.gamma(k));
            if (sum > cap) return false;
        }
        return true;
    };
    if (feasible(1.0)) return;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    it.gamma *= lo * (1.0 - 1e-9);
    for (int k = 0; k < K; ++k) it.b(k) = std::log2(1.0 + it.gamma(k));
}

inline double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

}  // namespace detail_algo

/// Initial design: random unit-modulus phases, per-AP matched filtering on
/// the estimated effective channels with power P_n split evenly across
/// users, and bound-consistent slack values.
inline DesignIterate initialize(const CsiEstimate& est, const SystemConfig& cfg,
                                RngStream& rng) {
    const Dimensions& d = est.dims;
    DesignIterate it;
    it.v.dims = d;
    it.v.v.resize(d.total_elements());
    for (Eigen::Index m = 0; m < it.v.v.size(); ++m)
        it.v.v(m) = std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI));

    it.W = Beamformer::zero(d);
    const double per_user = cfg.power_watts() / d.n_users;
    for (int n = 0; n < d.n_aps; ++n)
        for (int k = 0; k < d.n_users; ++k) {
            const CVec h_nk = est.direct_hat[n][k] + est.cascaded_hat[n][k].adjoint() * it.v.v;
            const double nrm = h_nk.norm();
            if (nrm > 0.0)
                it.W.W.col(k).segment(static_cast<Eigen::Index>(n) * d.antennas_per_ap,
                                      d.antennas_per_ap) = std::sqrt(per_user) * h_nk / nrm;
        }

    detail_algo::refresh_bounds(it, est);
    detail_algo::refresh_epigraphs(it, cfg);
    it.c1 = RVec::Zero(d.n_aps);
    it.c2 = RVec::Zero(d.n_users);
    it.c3 = RVec::Zero(d.total_elements());
    return it;
}

struct PccpResult {
    bool converged = false;
    double slack_sum = std::numeric_limits<double>::infinity();
    double max_modulus_residual = 0.0;  // before projection
    CVec v_before_projection;
    ConvergenceTrace trace;
};

/// Algorithm: penalty convex-concave procedure for the phase shifts. On
/// return the iterate holds the projected unit-modulus v and the solved
/// slack targets.
inline PccpResult pccp_phase(const CsiEstimate& est, DesignIterate& it,
                             const SystemConfig& cfg,
                             const ClusterAssignment* clusters = nullptr) {
    PccpResult out;
    out.trace.stage = clusters ? "pccp_refine" : "pccp";
    double rho = cfg.algo.rho0;
    std::optional<Eigen::VectorXd> warm;
    bool have_solution = false;

    for (int iter = 0; iter < cfg.algo.max_pccp_iters; ++iter) {
        const double t0 = detail_algo::now_s();
        const ConicProgram prog =
            clusters ? build_refine_phase(est, it, *clusters, rho, cfg)
                     : build_phase_subproblem(est, it, rho, cfg);
        SolveOptions opts;
        opts.tol_gap_rel = cfg.solver_tol;
        opts.warm_start = warm;
        const SolveResult res = solve(prog, opts);
        if (res.status != SolveStatus::optimal) {
            if (have_solution) break;  // keep the best iterate reached so far
            throw std::runtime_error(std::string("pccp_phase: solver failed (") +
                                     status_name(res.status) + ": " + res.message + ")");
        }
        warm = res.x;
        have_solution = true;

        const CVec v_prev = it.v.v;
        it.v.v = prog.extract_complex("v", res.x);
        it.gamma = prog.extract("gamma", res.x).cwiseMax(0.0);
        it.alpha = prog.extract("alpha", res.x).cwiseMax(0.0);
        it.beta = prog.extract("beta", res.x).cwiseMax(1.0 + 1e-12);
        it.c1 = prog.extract("c1", res.x);
        it.c2 = prog.extract("c2", res.x);
        it.c3 = prog.extract("c3", res.x);
        it.pccp_iters = iter + 1;

        out.slack_sum = it.c1.lpNorm<1>() + it.c2.lpNorm<1>() + it.c3.lpNorm<1>();
        const double step = (it.v.v - v_prev).norm();
        double obj = 0.0;
        for (int k = 0; k < est.dims.n_users; ++k) obj += std::log2(1.0 + it.gamma(k));
        out.trace.points.push_back(
            {obj, out.slack_sum, rho, res.status, detail_algo::now_s() - t0});

        if (out.slack_sum <= cfg.algo.pccp_phi1 && step <= cfg.algo.pccp_phi2) {
            out.converged = true;
            break;
        }
        rho = std::min(cfg.algo.penalty_scale * rho, cfg.algo.rho_max);
    }

    for (Eigen::Index m = 0; m < it.v.v.size(); ++m)
        out.max_modulus_residual =
            std::max(out.max_modulus_residual, std::abs(std::abs(it.v.v(m)) - 1.0));
    out.v_before_projection = it.v.v;
    it.v.project_unit_modulus();
    return out;
}

struct ScaResult {
    bool converged = false;
    std::vector<double> objectives;  // Obj^(0), Obj^(1), ...
    ConvergenceTrace trace;
};

/// Algorithm: successive convex approximation for the precoders (phase
/// shifts fixed). The iterate must be feasible for the first surrogate
/// program; initialize from the phase-stage output.
inline ScaResult sca_precoding(const CsiEstimate& est, DesignIterate& it,
                               const SystemConfig& cfg,
                               const ClusterAssignment* clusters = nullptr) {
    ScaResult out;
    out.trace.stage = clusters ? "sca_refine" : "sca";
    double obj_prev = 0.0;
    for (int k = 0; k < est.dims.n_users; ++k) obj_prev += std::log2(1.0 + it.gamma(k));
    out.objectives.push_back(obj_prev);
    std::optional<Eigen::VectorXd> warm;

    for (int iter = 0; iter < cfg.algo.max_sca_iters; ++iter) {
        const double t0 = detail_algo::now_s();
        const ConicProgram prog = clusters
                                      ? build_refine_precoding(est, it, *clusters, cfg)
                                      : build_precoding_subproblem(est, it, cfg);
        SolveOptions opts;
        opts.tol_gap_rel = cfg.solver_tol;
        opts.warm_start = warm;
        const SolveResult res = solve(prog, opts);
        if (res.status != SolveStatus::optimal) {
            if (iter > 0) break;  // keep the previous iterate
            throw std::runtime_error(std::string("sca_precoding: solver failed (") +
                                     status_name(res.status) + ": " + res.message + ")");
        }
        warm = res.x;

        it.W = extract_beamformer(prog, res.x, est.dims, clusters);
        it.gamma = prog.extract("gamma", res.x).cwiseMax(0.0);
        it.alpha = prog.extract("alpha", res.x).cwiseMax(0.0);
        it.beta = prog.extract("beta", res.x).cwiseMax(1.0 + 1e-12);
        if (prog.var_ranges.count("a")) {
            const RVec a_flat = prog.extract("a", res.x).cwiseMax(0.0);
            for (int n = 0; n < est.dims.n_aps; ++n)
                for (int k = 0; k < est.dims.n_users; ++k)
                    it.a(n, k) = a_flat(n * est.dims.n_users + k);
            it.b = prog.extract("b", res.x).cwiseMax(0.0);
        }
        it.sca_iters = iter + 1;

        double obj = 0.0;
        for (int k = 0; k < est.dims.n_users; ++k) obj += std::log2(1.0 + it.gamma(k));
        out.objectives.push_back(obj);
        out.trace.points.push_back({obj, 0.0, 0.0, res.status, detail_algo::now_s() - t0});

        const double denom = std::max(std::abs(obj), 1e-12);
        if (std::abs(obj - obj_prev) / denom <= cfg.algo.sca_tol) {
            out.converged = true;
            break;
        }
        obj_prev = obj;
    }
    return out;
}

namespace detail_algo {

/// worst-case bound rates of the current design, bits/s/Hz
inline RVec bound_rates(const DesignIterate& it, const CsiEstimate& est) {
    return worst_case_user_rates(it.W, it.v.v, est);
}

/// SCA starting point from the phase-stage output: gamma must not exceed
/// what the bounds certify, the epigraphs must match, and the backhaul
/// surrogate must hold
inline void prepare_sca_start(DesignIterate& it, const CsiEstimate& est,
                              const SystemConfig& cfg, const ClusterAssignment* clusters) {
    const RVec gamma_target = it.gamma;
    refresh_bounds(it, est);
    it.gamma = it.gamma.cwiseMin(gamma_target);
    refresh_epigraphs(it, cfg);
    clamp_gamma_for_backhaul(it, cfg, clusters);
}

/// largest global power scale tau so the per-cluster bound-rate sums fit
/// the backhaul caps; rates are strictly increasing in tau
inline double backhaul_power_scale(const DesignIterate& it, const CsiEstimate& est,
                                   const SystemConfig& cfg,
                                   const ClusterAssignment& clusters) {
    if (!std::isfinite(cfg.backhaul_mbps)) return 1.0;
    const double cap = cfg.backhaul_cap_se();
    auto fits = [&](double tau) {
        DesignIterate scaled = it;
        scaled.W.W *= tau;
        const RVec r = bound_rates(scaled, est);
        for (int n = 0; n < cfg.dims.n_aps; ++n) {
            double sum = 0.0;
            for (int k : clusters.served[n]) sum += r(k);
            if (sum > cap) return false;
        }
        return true;
    };
    if (fits(1.0)) return 1.0;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 50; ++i) {
        const double mid = 0.5 * (lo + hi);
        (fits(mid) ? lo : hi) = mid;
    }
    return lo * (1.0 - 1e-9);
}

}  // namespace detail_algo

/// Independent feasibility audit, computed only from model-core
/// quantities. `gamma_declared` are the design's claimed SINR bounds.
inline AuditReport run_feasibility_audit(const Beamformer& W, const PhaseVector& v,
                                         const ClusterAssignment& clusters,
                                         const RVec& gamma_declared, const CsiEstimate& est,
                                         const SystemConfig& cfg) {
    AuditReport rep;
    const double p_max = cfg.power_watts();
    rep.power_ok = true;
    for (int n = 0; n < cfg.dims.n_aps; ++n) {
        const double excess = W.ap_power(n) - p_max;
        rep.max_power_excess_w = std::max(rep.max_power_excess_w, excess);
        if (excess > 1e-6) rep.power_ok = false;
    }
    rep.unit_modulus_ok = true;
    for (Eigen::Index m = 0; m < v.v.size(); ++m) {
        const double err = std::abs(std::abs(v.v(m)) - 1.0);
        rep.max_modulus_error = std::max(rep.max_modulus_error, err);
        if (err > 1e-12) rep.unit_modulus_ok = false;
    }
    const RVec rates = worst_case_user_rates(W, v.v, est);
    rep.backhaul_ok = true;
    if (std::isfinite(cfg.backhaul_mbps)) {
        const double cap_mbps = cfg.backhaul_mbps / cfg.xi;
        for (int n = 0; n < cfg.dims.n_aps; ++n) {
            double sum_mbps = 0.0;
            for (int k : clusters.served[n]) sum_mbps += rates(k) * cfg.bandwidth_mhz;
            const double excess = sum_mbps - cap_mbps;
            rep.max_backhaul_excess_mbps = std::max(rep.max_backhaul_excess_mbps, excess);
            if (excess > 1e-6) rep.backhaul_ok = false;
        }
    }
    rep.sinr_ok = true;
    rep.min_sinr_margin = std::numeric_limits<double>::infinity();
    const auto sc = detail_sub::make_scaled(est);
    for (int k = 0; k < cfg.dims.n_users; ++k) {
        const CVec eff = effective_channel(sc.h_d[k], sc.Z[k], v.v);
        const double s = worst_case_signal(eff, W.W.col(k), sc.eps_k[k]);
        const double i = interference_upper_bound(eff, W.minus_k(k), sc.eps_d[k], sc.eps_c[k],
                                                  cfg.dims.elements_per_ris, cfg.dims.n_ris);
        const double achieved = s * s / (i * i + 1.0);
        if (gamma_declared(k) > 0.0) {
            rep.min_sinr_margin = std::min(rep.min_sinr_margin,
                                           achieved / gamma_declared(k) - 1.0);
            if (achieved < (1.0 - 1e-6) * gamma_declared(k)) rep.sinr_ok = false;
        }
    }
    if (!std::isfinite(rep.min_sinr_margin)) rep.min_sinr_margin = 0.0;
    return rep;
}

/// Packages an iterate as a finished solution: backhaul enforcement by
/// global power scaling (bound rates are strictly increasing in the
/// scale), declared gamma refreshed to the achieved bounds, and the audit.
inline DesignSolution finalize_design(DesignIterate it, ClusterAssignment clusters,
                                      const CsiEstimate& est, const SystemConfig& cfg,
                                      std::vector<ConvergenceTrace> traces, bool suboptimal) {
    const double tau = detail_algo::backhaul_power_scale(it, est, cfg, clusters);
    if (tau < 1.0) it.W.W *= tau;

    DesignSolution sol;
    sol.W = it.W;
    sol.v = it.v;
    sol.clusters = std::move(clusters);
    sol.traces = std::move(traces);
    sol.ao_iters = it.ao_iters;
    sol.suboptimal = suboptimal;
    sol.power_scale = tau;

    detail_algo::refresh_bounds(it, est);  // declared gamma = achieved bounds
    sol.gamma = it.gamma;
    sol.wc_rates = worst_case_user_rates(sol.W, sol.v.v, est);
    sol.nominal_rates = nominal_user_rates(sol.W, sol.v.v, est);
    sol.audit = run_feasibility_audit(sol.W, sol.v, sol.clusters, sol.gamma, est, cfg);
    return sol;
}

namespace detail_algo {

/// outer alternating loop (phase stage, then precoding stage), keeping the
/// best iterate by declared objective
inline int ao_main_loop(const CsiEstimate& est, const SystemConfig& cfg, DesignIterate& it,
                        std::vector<ConvergenceTrace>& traces, bool& suboptimal,
                        int max_iters) {
    double best_obj = -std::numeric_limits<double>::infinity();
    DesignIterate best = it;
    std::vector<double> obj_history;
    int iters = 0;
    for (int i = 0; i < max_iters; ++i) {
        iters = i + 1;
        double obj = 0.0;
        try {
            auto pres = pccp_phase(est, it, cfg);
            traces.push_back(std::move(pres.trace));
            prepare_sca_start(it, est, cfg, nullptr);
            auto sres = sca_precoding(est, it, cfg);
            traces.push_back(std::move(sres.trace));
            obj = sres.objectives.back();
        } catch (const std::runtime_error&) {
            suboptimal = true;
            break;
        }
        obj_history.push_back(obj);
        if (obj > best_obj) {
            best_obj = obj;
            best = it;
        } else if (obj < best_obj - 1e-9 * (1.0 + std::abs(best_obj))) {
            break;  // no further improvement; the best iterate is kept
        }
        const size_t h = obj_history.size();
        if (h >= 2 && std::abs(obj_history[h - 1] - obj_history[h - 2]) /
                              std::max(std::abs(obj_history[h - 1]), 1e-12) <=
                          cfg.algo.sca_tol)
            break;
    }
    it = best;
    return iters;
}

}  // namespace detail_algo

/// Algorithm: full alternating optimization with refinement. The loop is
/// warm-started from a nominal (zero-radii) design pass, which lands the
/// robust iteration in a much better basin than the matched-filter start.
/// Returns a complete solution; if a refinement stage fails the best
/// pre-refinement iterate is returned with the `suboptimal` flag set.
inline DesignSolution ao_solve(const CsiEstimate& est, const SystemConfig& cfg,
                               RngStream& rng) {
    DesignIterate it = initialize(est, cfg, rng);
    std::vector<ConvergenceTrace> traces;
    bool suboptimal = false;

    if (!est.all_radii_zero()) {
        const CsiEstimate nominal = zero_radii(est);
        bool warm_subopt = false;
        detail_algo::ao_main_loop(nominal, cfg, it, traces, warm_subopt,
                                  std::min(cfg.algo.max_ao_iters, 10));
        detail_algo::refresh_bounds(it, est);  // re-anchor against the true radii
        detail_algo::refresh_epigraphs(it, cfg);
    }

    const int ao_iters =
        detail_algo::ao_main_loop(est, cfg, it, traces, suboptimal, cfg.algo.max_ao_iters);
    it.ao_iters = ao_iters;

    // refinement: fix clusters, then one more AO pass with exact backhaul rows
    ClusterAssignment clusters = determine_clusters(it.W, cfg.algo.mu_th);
    {
        DesignIterate refined = it;
        // masked precoders are identically zero from here on
        for (int n = 0; n < cfg.dims.n_aps; ++n)
            for (int k = 0; k < cfg.dims.n_users; ++k)
                if (!clusters.serves(n, k))
                    refined.W.W.col(k)
                        .segment(static_cast<Eigen::Index>(n) * cfg.dims.antennas_per_ap,
                                 cfg.dims.antennas_per_ap)
                        .setZero();
        bool ok = true;
        try {
            detail_algo::refresh_bounds(refined, est);
            detail_algo::refresh_epigraphs(refined, cfg);
            auto pres = pccp_phase(est, refined, cfg, &clusters);
            traces.push_back(std::move(pres.trace));
            detail_algo::prepare_sca_start(refined, est, cfg, &clusters);
            auto sres = sca_precoding(est, refined, cfg, &clusters);
            traces.push_back(std::move(sres.trace));
        } catch (const std::runtime_error&) {
            ok = false;
            suboptimal = true;
        }
        if (ok) it = std::move(refined);
    }

    // the gamma-capped refinement programs do not limit the achieved bound
    // rates by themselves; finalize_design enforces the caps by power scaling
    return finalize_design(std::move(it), std::move(clusters), est, cfg, std::move(traces),
                           suboptimal);
}

}  // namespace cfris

#endif
