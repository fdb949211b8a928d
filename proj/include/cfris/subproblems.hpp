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

// Convex subproblem builders. Four programs are generated from a design
// iterate: the penalized phase program (P-CCP step), the SCA precoding
// program, and the two refinement variants with fixed user clusters and
// exact linear backhaul rows. Channels are normalized per user so that
// noise power becomes 1, which keeps all conic data well scaled; the
// slack variables gamma/alpha/beta live in those normalized units.

#ifndef CFRIS_SUBPROBLEMS_HPP
#define CFRIS_SUBPROBLEMS_HPP

#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "config.hpp"
#include "conic.hpp"
#include "model.hpp"
#include "types.hpp"

namespace cfris {

/// Current iterate of the alternating optimization: the linearization
/// point for every surrogate constraint.
struct DesignIterate {
    Beamformer W;
    PhaseVector v;
    RVec gamma;  // per-user SINR targets
    RVec alpha;  // signal slack (noise-normalized units)
    RVec beta;   // interference-plus-noise slack (noise-normalized units)
    Eigen::MatrixXd a;  // N x K, l0-surrogate epigraphs
    RVec b;             // per-user rate epigraphs
    RVec c1, c2, c3;    // last observed penalty slacks
    int pccp_iters = 0, sca_iters = 0, ao_iters = 0;

    void validate_linearization() const {
        if (gamma.size() == 0 || (gamma.array() < 0.0).any())
            throw std::invalid_argument("DesignIterate: gamma must be nonnegative");
        if ((alpha.array() < 0.0).any())
            throw std::invalid_argument("DesignIterate: alpha must be nonnegative");
        if ((beta.array() <= 0.0).any())
            throw std::invalid_argument("DesignIterate: beta must be positive");
    }
};

/// AP-user clusters S_n = {k : ||w_{n,k}||^2 >= mu_th}.
struct ClusterAssignment {
    std::vector<std::set<int>> served;  // [n]

    bool serves(int n, int k) const { return served[n].count(k) > 0; }
    bool user_served_anywhere(int k) const {
        for (const auto& s : served)
            if (s.count(k)) return true;
        return false;
    }
};

/// Tangent coefficients of the quadratic-over-linear term at (alpha_t,
/// beta_t): alpha^2/beta >= (2 a_t/b_t) alpha - (a_t/b_t)^2 beta, used as
/// the surrogate LHS of the SINR coupling constraint.
struct QolCoefs {
    double c_alpha = 0.0;
    double c_beta = 0.0;
};

inline QolCoefs linearize_quad_over_lin(double alpha_t, double beta_t) {
    if (!(beta_t > 0.0))
        throw std::invalid_argument("linearize_quad_over_lin: beta_t must be positive");
    if (alpha_t < 0.0)
        throw std::invalid_argument("linearize_quad_over_lin: alpha_t must be nonnegative");
    const double r = alpha_t / beta_t;
    return {2.0 * r, r * r};
}

namespace detail_sub {

/// per-user noise-normalized channel estimates and radii
struct ScaledCsi {
    Dimensions dims;
    std::vector<CVec> h_d;       // stacked direct estimate / sigma_k
    std::vector<CMat> Z;         // aggregated cascaded estimate / sigma_k
    std::vector<double> eps_d, eps_c, eps_k;
};

inline ScaledCsi make_scaled(const CsiEstimate& est) {
    ScaledCsi s;
    s.dims = est.dims;
    const int K = est.dims.n_users;
    s.h_d.resize(K);
    s.Z.resize(K);
    s.eps_d.resize(K);
    s.eps_c.resize(K);
    s.eps_k.resize(K);
    for (int k = 0; k < K; ++k) {
        const double sigma = std::sqrt(est.noise_power(k));
        s.h_d[k] = est.direct_hat_stacked(k) / sigma;
        s.Z[k] = est.cascaded_hat_agg(k) / sigma;
        s.eps_d[k] = est.eps_d(k) / sigma;
        s.eps_c[k] = est.eps_c(k) / sigma;
        s.eps_k[k] = est.eps_total(k) / sigma;
    }
    return s;
}

inline double safe_phase_denom(cxd& u) {
    // degenerate linearization point: fall back to the matched-filter
    // direction (real positive phasor)
    double mag = std::abs(u);
    if (mag < 1e-12) {
        u = cxd(1.0, 0.0);
        mag = 1.0;
    }
    return mag;
}

/// log2(1+g) tangent at g_t: value + (g - g_t) / ((1+g_t) ln 2)
struct RateTangent {
    double constant;  // log2(1 + g_t) - g_t / ((1+g_t) ln 2)
    double slope;     // 1 / ((1+g_t) ln 2)
};
inline RateTangent rate_tangent(double gamma_t) {
    const double slope = 1.0 / ((1.0 + gamma_t) * M_LN2);
    return {std::log2(1.0 + gamma_t) - gamma_t * slope, slope};
}

}  // namespace detail_sub

/// Penalized phase-shift program (the P-CCP inner convex problem). W is
/// fixed at the iterate; v, gamma, alpha, beta and the penalty slacks are
/// optimized.
inline ConicProgram build_phase_subproblem(const CsiEstimate& est, const DesignIterate& it,
                                           double rho, const SystemConfig& cfg) {
    it.validate_linearization();
    const Dimensions& d = est.dims;
    const int K = d.n_users, N = d.n_aps, ML = d.total_elements();
    const auto sc = detail_sub::make_scaled(est);
    const double cap = cfg.backhaul_cap_se();

    ProgramBuilder b;
    const int v = b.add_cvars("v", ML);
    const int gamma = b.add_vars("gamma", K);
    const int alpha = b.add_vars("alpha", K);
    const int beta = b.add_vars("beta", K);
    const int t = b.add_vars("t", K);
    const int s6 = (K >= 2) ? b.add_vars("s6", K) : -1;
    const int c1 = b.add_vars("c1", N);
    const int c2 = b.add_vars("c2", K);
    const int c3 = b.add_vars("c3", ML);

    for (int k = 0; k < K; ++k) b.maximize(t + k, 1.0);
    for (int n = 0; n < N; ++n) b.maximize(c1 + n, -rho);
    for (int k = 0; k < K; ++k) b.maximize(c2 + k, -rho);
    for (int m = 0; m < ML; ++m) b.maximize(c3 + m, -rho);

    // objective epigraph: exp(t_k ln2) <= 1 + gamma_k
    for (int k = 0; k < K; ++k)
        b.add_exp(M_LN2 * LinExpr::variable(t + k), LinExpr(1.0),
                  LinExpr(1.0) + LinExpr::variable(gamma + k), "Obj");

    // backhaul surrogate: full tangent of sum_k f(||w_nk||^2) log2(1+gamma_k)
    if (std::isfinite(cfg.backhaul_mbps)) {
        for (int n = 0; n < N; ++n) {
            LinExpr row(cap);
            row.add(c1 + n, 1.0);
            for (int k = 0; k < K; ++k) {
                const double f =
                    l0_smooth(it.W.ap_block(n, k).squaredNorm(), cfg.algo.varpi).value;
                const auto tan = detail_sub::rate_tangent(it.gamma(k));
                row.constant -= f * tan.constant;
                row.add(gamma + k, -f * tan.slope);
            }
            b.add_nonneg(std::move(row), "C3");
        }
    }

    // linearized signal bound: Re{conj(u_k)/|u_k| (d_k + v^H q_k)} - eps||w|| >= alpha - c2
    for (int k = 0; k < K; ++k) {
        const CVec w_k = it.W.W.col(k);
        const cxd d_k = sc.h_d[k].dot(w_k);
        const CVec q_k = sc.Z[k] * w_k;
        cxd u_k = d_k + it.v.v.dot(q_k);  // v^H q
        const double mag = detail_sub::safe_phase_denom(u_k);
        const cxd dir = std::conj(u_k) / mag;
        LinExpr row(std::real(dir * d_k) - sc.eps_k[k] * w_k.norm());
        const CVec q_rot = dir * q_k;
        row += b.conj_dot(q_rot, v).re;
        row.add(alpha + k, -1.0);
        row.add(c2 + k, 1.0);
        b.add_nonneg(std::move(row), "C5");
    }

    // interference bound: ||(d_kj + v^H q_kj)_j|| <= s6_k - eps_k ||W_-k||_F,
    // s6_k^2 <= beta_k - 1 (noise-normalized)
    for (int k = 0; k < K; ++k) {
        if (K == 1) {
            b.add_nonneg(LinExpr::variable(beta + k) - LinExpr(1.0), "C6");
            continue;
        }
        std::vector<CLinExpr> entries;
        for (int j = 0; j < K; ++j) {
            if (j == k) continue;
            const CVec w_j = it.W.W.col(j);
            const cxd d_kj = sc.h_d[k].dot(w_j);
            CLinExpr e(d_kj);
            e += b.conj_dot(CVec(sc.Z[k] * w_j), v);
            entries.push_back(std::move(e));
        }
        const double w_mk_fro = it.W.minus_k(k).norm();
        LinExpr head = LinExpr::variable(s6 + k) - LinExpr(sc.eps_k[k] * w_mk_fro);
        b.add_cnorm_le(entries, std::move(head), "C6");
        b.add_rsoc(LinExpr::variable(beta + k) - LinExpr(1.0), LinExpr(0.5),
                   {LinExpr::variable(s6 + k)}, "C6r");
    }

    // SINR coupling tangent: (2 a_t/b_t) alpha - (a_t/b_t)^2 beta >= gamma
    for (int k = 0; k < K; ++k) {
        const auto q = linearize_quad_over_lin(it.alpha(k), it.beta(k));
        LinExpr row;
        row.add(alpha + k, q.c_alpha).add(beta + k, -q.c_beta).add(gamma + k, -1.0);
        b.add_nonneg(std::move(row), "C7");
    }

    // unit-modulus split: |v_m|^2 <= 1 + c3_m and tangent |v_m|^2 >= 1 - c3_m
    for (int m = 0; m < ML; ++m) {
        const CLinExpr vm = b.cvar(v, m);
        b.add_rsoc(LinExpr(1.0) + LinExpr::variable(c3 + m), LinExpr(0.5), {vm.re, vm.im},
                   "C11");
        const cxd vt = it.v.v(m);
        LinExpr row(-std::norm(vt) - 1.0);
        row.add(v + 2 * m, 2.0 * vt.real());
        row.add(v + 2 * m + 1, 2.0 * vt.imag());
        row.add(c3 + m, 1.0);
        b.add_nonneg(std::move(row), "C12");
    }

    for (int k = 0; k < K; ++k) b.add_nonneg(LinExpr::variable(gamma + k), "nn");
    for (int k = 0; k < K; ++k) b.add_nonneg(LinExpr::variable(alpha + k), "nn");
    for (int n = 0; n < N; ++n) b.add_nonneg(LinExpr::variable(c1 + n), "nn");
    for (int k = 0; k < K; ++k) b.add_nonneg(LinExpr::variable(c2 + k), "nn");
    for (int m = 0; m < ML; ++m) b.add_nonneg(LinExpr::variable(c3 + m), "nn");

    return b.build();
}

/// Refinement phase program: the backhaul surrogate is replaced by the
/// exact linear rows sum_{k in S_n} t_k <= cap (epigraph variables), with
/// the penalty slack retained so the P-CCP can start infeasible.
inline ConicProgram build_refine_phase(const CsiEstimate& est, const DesignIterate& it,
                                       const ClusterAssignment& clusters, double rho,
                                       const SystemConfig& cfg) {
    ConicProgram base = build_phase_subproblem(est, it, rho, cfg);
    // strip the C3 rows and rebuild them as cluster sums over t_k
    std::erase_if(base.blocks, [](const ConeBlock& blk) { return blk.family == "C3"; });
    const auto [t_start, t_count] = base.range("t");
    (void)t_count;
    const auto [c1_start, c1_count] = base.range("c1");
    (void)c1_count;
    if (std::isfinite(cfg.backhaul_mbps)) {
        const double cap = cfg.backhaul_cap_se();
        for (int n = 0; n < est.dims.n_aps; ++n) {
            LinExpr row(cap);
            row.add(c1_start + n, 1.0);
            for (int k : clusters.served[n]) row.add(t_start + k, -1.0);
            base.blocks.push_back({Cone::nonneg, {std::move(row)}, "C13"});
        }
    }
    base.validate();
    return base;
}

namespace detail_sub {

/// variable layout of a (possibly masked) precoding program
struct WLayout {
    // start index of w_{n,k} in the builder, or -1 when masked to zero
    std::vector<std::vector<int>> start;  // [n][k]
    int count = 0;                        // complex variables created

    bool present(int n, int k) const { return start[n][k] >= 0; }
};

inline WLayout make_layout(ProgramBuilder& b, const Dimensions& d,
                           const ClusterAssignment* clusters) {
    WLayout lay;
    lay.start.assign(d.n_aps, std::vector<int>(d.n_users, -1));
    std::vector<std::pair<int, int>> order;
    for (int n = 0; n < d.n_aps; ++n)
        for (int k = 0; k < d.n_users; ++k)
            if (!clusters || clusters->serves(n, k)) order.emplace_back(n, k);
    if (!order.empty()) {
        const int start = b.add_cvars("w", static_cast<int>(order.size()) * d.antennas_per_ap);
        int off = 0;
        for (const auto& [n, k] : order) {
            lay.start[n][k] = start + 2 * off * d.antennas_per_ap;
            off += 1;
        }
        lay.count = static_cast<int>(order.size()) * d.antennas_per_ap;
    }
    return lay;
}

/// h^H w_{n,k}-style linear functional restricted to present blocks:
/// sum over APs of sum_i conj(coefs[ap block i]) w_{n,k,i}
inline CLinExpr channel_dot(const ProgramBuilder& b, const WLayout& lay, const CVec& coefs_conj,
                            int k, const Dimensions& d) {
    CLinExpr out;
    for (int n = 0; n < d.n_aps; ++n) {
        if (!lay.present(n, k)) continue;
        const CVec seg = coefs_conj.segment(static_cast<Eigen::Index>(n) * d.antennas_per_ap,
                                            d.antennas_per_ap);
        out += b.lin_dot(seg, lay.start[n][k]);
    }
    return out;
}

/// embedded entries of w_{n,k} blocks for one user, scaled
inline void append_w_entries(const ProgramBuilder& b, const WLayout& lay, int k,
                             const Dimensions& d, double scale, std::vector<LinExpr>& tail) {
    for (int n = 0; n < d.n_aps; ++n) {
        if (!lay.present(n, k)) continue;
        for (int i = 0; i < d.antennas_per_ap; ++i) {
            CLinExpr e = b.cvar(lay.start[n][k], i);
            tail.push_back(scale * e.re);
            tail.push_back(scale * e.im);
        }
    }
}

inline ConicProgram build_precoding_common(const CsiEstimate& est, const DesignIterate& it,
                                           const SystemConfig& cfg,
                                           const ClusterAssignment* clusters) {
    it.validate_linearization();
    const Dimensions& d = est.dims;
    const int K = d.n_users, N = d.n_aps, Nt = d.antennas_per_ap;
    const auto sc = make_scaled(est);
    const bool backhaul_limited = std::isfinite(cfg.backhaul_mbps);
    const double cap = backhaul_limited ? cfg.backhaul_cap_se() : 0.0;
    const bool refine = clusters != nullptr;

    // fixed-phase effective channels, noise-normalized
    std::vector<CVec> h_eff(K);
    for (int k = 0; k < K; ++k) h_eff[k] = sc.h_d[k] + sc.Z[k].adjoint() * it.v.v;

    ProgramBuilder b;
    WLayout lay = make_layout(b, d, clusters);
    const int gamma = b.add_vars("gamma", K);
    const int alpha = b.add_vars("alpha", K);
    const int beta = b.add_vars("beta", K);
    const int t = b.add_vars("t", K);
    const int s6 = (K >= 2) ? b.add_vars("s6", K) : -1;
    std::vector<int> sF(K, -1);
    if (K >= 2)
        for (int k = 0; k < K; ++k)
            if (sc.eps_k[k] > 0.0) sF[k] = b.add_vars("sF" + std::to_string(k), 1);
    const bool split_backhaul = !refine && backhaul_limited;
    const int a_var = split_backhaul ? b.add_vars("a", N * K) : -1;
    const int b_var = split_backhaul ? b.add_vars("b", K) : -1;

    for (int k = 0; k < K; ++k) b.maximize(t + k, 1.0);

    for (int k = 0; k < K; ++k)
        b.add_exp(M_LN2 * LinExpr::variable(t + k), LinExpr(1.0),
                  LinExpr(1.0) + LinExpr::variable(gamma + k), "Obj");

    // per-AP power
    for (int n = 0; n < N; ++n) {
        std::vector<LinExpr> tail;
        for (int k = 0; k < K; ++k)
            if (lay.present(n, k))
                for (int i = 0; i < Nt; ++i) {
                    CLinExpr e = b.cvar(lay.start[n][k], i);
                    tail.push_back(e.re);
                    tail.push_back(e.im);
                }
        if (tail.empty()) continue;
        b.add_rsoc(LinExpr(cfg.power_watts()), LinExpr(0.5), std::move(tail), "C1");
    }

    // signal bound, linearized in w around w^(t)
    for (int k = 0; k < K; ++k) {
        bool any = false;
        for (int n = 0; n < N; ++n) any = any || lay.present(n, k);
        if (!any) {
            // user unserved: alpha_k pinned to zero
            b.add_nonneg(-1.0 * LinExpr::variable(alpha + k), "C5");
            continue;
        }
        cxd u_k = h_eff[k].dot(it.W.W.col(k));
        if (std::abs(u_k) < 1e-12) u_k = cxd(h_eff[k].squaredNorm(), 0.0);
        const double mag = safe_phase_denom(u_k);
        const cxd dir = std::conj(u_k) / mag;
        // coefficient vector conj(dir * h_eff): lin_dot gives dir^* h^H w
        const CVec coefs = (dir * h_eff[k]).conjugate();
        CLinExpr lin = channel_dot(b, lay, coefs, k, d);
        LinExpr head = lin.re;
        head.add(alpha + k, -1.0);
        if (sc.eps_k[k] > 0.0) {
            std::vector<LinExpr> tail;
            append_w_entries(b, lay, k, d, sc.eps_k[k], tail);
            b.add_soc(std::move(head), std::move(tail), "C5");
        } else {
            b.add_nonneg(std::move(head), "C5");
        }
    }

    // interference bound with Frobenius epigraph when radii are positive
    for (int k = 0; k < K; ++k) {
        if (K == 1) {
            b.add_nonneg(LinExpr::variable(beta + k) - LinExpr(1.0), "C6");
            continue;
        }
        std::vector<CLinExpr> entries;
        for (int j = 0; j < K; ++j) {
            if (j == k) continue;
            entries.push_back(channel_dot(b, lay, CVec(h_eff[k].conjugate()), j, d));
        }
        LinExpr head = LinExpr::variable(s6 + k);
        if (sc.eps_k[k] > 0.0) {
            std::vector<LinExpr> ftail;
            for (int j = 0; j < K; ++j) {
                if (j == k) continue;
                append_w_entries(b, lay, j, d, sc.eps_k[k], ftail);
            }
            b.add_soc(LinExpr::variable(sF[k]), std::move(ftail), "C6F");
            head.add(sF[k], -1.0);
        }
        b.add_cnorm_le(entries, std::move(head), "C6");
        b.add_rsoc(LinExpr::variable(beta + k) - LinExpr(1.0), LinExpr(0.5),
                   {LinExpr::variable(s6 + k)}, "C6r");
    }

    // SINR coupling tangent
    for (int k = 0; k < K; ++k) {
        const auto q = linearize_quad_over_lin(it.alpha(k), it.beta(k));
        LinExpr row;
        row.add(alpha + k, q.c_alpha).add(beta + k, -q.c_beta).add(gamma + k, -1.0);
        b.add_nonneg(std::move(row), "C7");
    }

    if (split_backhaul) {
        // backhaul split: (a+b)^2 - (a-b)^2 <= 4 cap, concave part linearized
        for (int n = 0; n < N; ++n) {
            LinExpr rhs(4.0 * cap);
            std::vector<LinExpr> tail;
            for (int k = 0; k < K; ++k) {
                const double dt = it.a(n, k) - it.b(k);
                rhs.constant -= dt * dt;
                LinExpr diff = LinExpr::variable(a_var + n * K + k) -
                               LinExpr::variable(b_var + k);
                rhs += 2.0 * dt * diff;
                tail.push_back(LinExpr::variable(a_var + n * K + k) +
                               LinExpr::variable(b_var + k));
            }
            b.add_rsoc(std::move(rhs), LinExpr(0.5), std::move(tail), "C8");
        }
        // l0 surrogate tangent: f(x_t) + grad (||w_nk||^2 - x_t) <= a_nk
        for (int n = 0; n < N; ++n) {
            for (int k = 0; k < K; ++k) {
                const double xt = it.W.ap_block(n, k).squaredNorm();
                const auto f = l0_smooth(xt, cfg.algo.varpi);
                // ||w_nk||^2 <= (a_nk - (f - grad*xt)) / grad
                LinExpr x = (1.0 / f.gradient) * (LinExpr::variable(a_var + n * K + k) -
                                                  LinExpr(f.value - f.gradient * xt));
                std::vector<LinExpr> tail;
                for (int i = 0; i < Nt; ++i) {
                    CLinExpr e = b.cvar(lay.start[n][k], i);
                    tail.push_back(e.re);
                    tail.push_back(e.im);
                }
                b.add_rsoc(std::move(x), LinExpr(0.5), std::move(tail), "C9");
            }
        }
        // rate tangent: log2(1+gamma) tangent <= b_k
        for (int k = 0; k < K; ++k) {
            const auto tan = rate_tangent(it.gamma(k));
            LinExpr row(-tan.constant);
            row.add(b_var + k, 1.0).add(gamma + k, -tan.slope);
            b.add_nonneg(std::move(row), "C10");
        }
        for (int n = 0; n < N; ++n)
            for (int k = 0; k < K; ++k)
                b.add_nonneg(LinExpr::variable(a_var + n * K + k), "nn");
        for (int k = 0; k < K; ++k) b.add_nonneg(LinExpr::variable(b_var + k), "nn");
    } else if (refine && backhaul_limited) {
        // exact linear backhaul rows over the fixed clusters
        for (int n = 0; n < N; ++n) {
            LinExpr row(cap);
            for (int k : clusters->served[n]) row.add(t + k, -1.0);
            b.add_nonneg(std::move(row), "C13");
        }
    }

    for (int k = 0; k < K; ++k) b.add_nonneg(LinExpr::variable(gamma + k), "nn");
    for (int k = 0; k < K; ++k) b.add_nonneg(LinExpr::variable(alpha + k), "nn");

    return b.build();
}

}  // namespace detail_sub

/// SCA precoding program at the iterate (phase shifts fixed).
inline ConicProgram build_precoding_subproblem(const CsiEstimate& est, const DesignIterate& it,
                                               const SystemConfig& cfg) {
    return detail_sub::build_precoding_common(est, it, cfg, nullptr);
}

/// Refinement precoding program: w_{n,k} exists only for k in S_n (others
/// are identically zero) and the backhaul rows are linear in the epigraphs.
inline ConicProgram build_refine_precoding(const CsiEstimate& est, const DesignIterate& it,
                                           const ClusterAssignment& clusters,
                                           const SystemConfig& cfg) {
    return detail_sub::build_precoding_common(est, it, cfg, &clusters);
}

/// Reads the beamformer out of a precoding solution, writing zeros for
/// masked (n,k) pairs.
inline Beamformer extract_beamformer(const ConicProgram& prog, const Eigen::VectorXd& x,
                                     const Dimensions& d,
                                     const ClusterAssignment* clusters = nullptr) {
    Beamformer bf = Beamformer::zero(d);
    if (prog.var_ranges.count("w") == 0) return bf;
    const CVec w_all = prog.extract_complex("w", x);
    Eigen::Index off = 0;
    for (int n = 0; n < d.n_aps; ++n)
        for (int k = 0; k < d.n_users; ++k) {
            if (clusters && !clusters->serves(n, k)) continue;
            bf.W.col(k).segment(static_cast<Eigen::Index>(n) * d.antennas_per_ap,
                                d.antennas_per_ap) = w_all.segment(off, d.antennas_per_ap);
            off += d.antennas_per_ap;
        }
    return bf;
}

}  // namespace cfris

#endif
