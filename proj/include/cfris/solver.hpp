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

// Embedded interior-point solver for the ConicProgram IR. Equality rows
// are eliminated up front through a null-space parameterization; the
// reduced problem is solved with a two-phase path-following barrier
// method using self-concordant barriers for nonneg, second-order,
// rotated second-order, and exponential cones. Dense linear algebra,
// sized for the small programs this project generates. A single solve is
// deterministic and single-threaded.

#ifndef CFRIS_SOLVER_HPP
#define CFRIS_SOLVER_HPP

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/QR>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "conic.hpp"

namespace cfris {

enum class SolveStatus { optimal, primal_infeasible, dual_infeasible, numerical_limit };

inline const char* status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::primal_infeasible: return "primal_infeasible";
        case SolveStatus::dual_infeasible: return "dual_infeasible";
        case SolveStatus::numerical_limit: return "numerical_limit";
    }
    return "?";
}

struct SolveOptions {
    double tol_gap_rel = 1e-8;  // relative duality-gap target
    int max_newton = 2000;      // total Newton-step budget (both phases)
    double barrier_mu = 20.0;   // outer path-following factor
    std::optional<Eigen::VectorXd> warm_start;  // interior hint; skips phase 1 if valid
};

struct SolveResult {
    SolveStatus status = SolveStatus::numerical_limit;
    Eigen::VectorXd x;          // primal values (optimal / numerical_limit only)
    double objective = 0.0;     // maximize-convention value
    int iterations = 0;         // Newton steps
    double runtime_s = 0.0;
    double gap = std::numeric_limits<double>::infinity();  // absolute gap bound
    std::string message;
};

namespace detail {

struct SparseRow {
    std::vector<std::pair<int, double>> terms;
    double constant = 0.0;

    double eval(const Eigen::VectorXd& x) const {
        double v = constant;
        for (const auto& [i, c] : rowterms()) v += c * x(i);
        return v;
    }
    const std::vector<std::pair<int, double>>& rowterms() const { return terms; }
};

struct CompiledBlock {
    Cone tag = Cone::nonneg;
    std::vector<SparseRow> rows;
    std::vector<int> vars;   // sorted unique variable indices
    Eigen::MatrixXd Ac;      // dim x vars.size(), compact coefficient matrix
    double nu = 0.0;

    int dim() const { return static_cast<int>(rows.size()); }
};

/// reduced problem: minimize c.z + barrier over the cone blocks
struct Compiled {
    int n = 0;
    Eigen::VectorXd c;
    std::vector<CompiledBlock> blocks;
    double nu = 0.0;
};

inline SparseRow to_sparse(const LinExpr& e) {
    SparseRow r;
    r.constant = e.constant;
    std::vector<std::pair<int, double>> t = e.terms;
    std::sort(t.begin(), t.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (const auto& [i, c] : t) {
        if (!r.terms.empty() && r.terms.back().first == i)
            r.terms.back().second += c;
        else
            r.terms.emplace_back(i, c);
    }
    std::erase_if(r.terms, [](const auto& p) { return p.second == 0.0; });
    return r;
}

inline void finalize_block(CompiledBlock& blk) {
    blk.vars.clear();
    for (const auto& row : blk.rows)
        for (const auto& [i, c] : row.terms) {
            (void)c;
            blk.vars.push_back(i);
        }
    std::sort(blk.vars.begin(), blk.vars.end());
    blk.vars.erase(std::unique(blk.vars.begin(), blk.vars.end()), blk.vars.end());
    blk.Ac = Eigen::MatrixXd::Zero(blk.dim(), static_cast<Eigen::Index>(blk.vars.size()));
    for (int r = 0; r < blk.dim(); ++r)
        for (const auto& [i, c] : blk.rows[r].terms) {
            const auto pos = std::lower_bound(blk.vars.begin(), blk.vars.end(), i) -
                             blk.vars.begin();
            blk.Ac(r, pos) += c;
        }
}

inline Eigen::VectorXd block_values(const CompiledBlock& blk, const Eigen::VectorXd& x) {
    Eigen::VectorXd s(blk.dim());
    for (int r = 0; r < blk.dim(); ++r) s(r) = blk.rows[r].eval(x);
    return s;
}

inline bool interior(const CompiledBlock& blk, const Eigen::VectorXd& s) {
    if (!s.allFinite()) return false;
    switch (blk.tag) {
        case Cone::nonneg:
            return (s.array() > 0.0).all();
        case Cone::soc: {
            if (!(s(0) > 0.0)) return false;
            return s(0) * s(0) - s.tail(s.size() - 1).squaredNorm() > 0.0;
        }
        case Cone::rsoc: {
            if (!(s(0) > 0.0) || !(s(1) > 0.0)) return false;
            return 2.0 * s(0) * s(1) - s.tail(s.size() - 2).squaredNorm() > 0.0;
        }
        case Cone::exp: {
            if (!(s(1) > 0.0) || !(s(2) > 0.0)) return false;
            return s(1) * std::log(s(2) / s(1)) - s(0) > 0.0;
        }
        default: return false;
    }
}

inline double barrier_value(const CompiledBlock& blk, const Eigen::VectorXd& s) {
    switch (blk.tag) {
        case Cone::nonneg:
            return -s.array().log().sum();
        case Cone::soc:
            return -std::log(s(0) * s(0) - s.tail(s.size() - 1).squaredNorm());
        case Cone::rsoc:
            return -std::log(2.0 * s(0) * s(1) - s.tail(s.size() - 2).squaredNorm());
        case Cone::exp:
            return -std::log(s(1) * std::log(s(2) / s(1)) - s(0)) - std::log(s(1)) -
                   std::log(s(2));
        default: return 0.0;
    }
}

/// gradient and Hessian of the barrier in block-local coordinates
inline void barrier_derivs(const CompiledBlock& blk, const Eigen::VectorXd& s,
                           Eigen::VectorXd& g, Eigen::MatrixXd& H) {
    const int d = blk.dim();
    g.setZero(d);
    H.setZero(d, d);
    switch (blk.tag) {
        case Cone::nonneg: {
            for (int i = 0; i < d; ++i) {
                g(i) = -1.0 / s(i);
                H(i, i) = 1.0 / (s(i) * s(i));
            }
            break;
        }
        case Cone::soc: {
            const double q = s(0) * s(0) - s.tail(d - 1).squaredNorm();
            Eigen::VectorXd p(d);
            p(0) = s(0);
            p.tail(d - 1) = -s.tail(d - 1);
            g = (-2.0 / q) * p;
            H = (4.0 / (q * q)) * (p * p.transpose());
            H(0, 0) -= 2.0 / q;
            for (int i = 1; i < d; ++i) H(i, i) += 2.0 / q;
            break;
        }
        case Cone::rsoc: {
            const double q = 2.0 * s(0) * s(1) - s.tail(d - 2).squaredNorm();
            Eigen::VectorXd dq(d);
            dq(0) = 2.0 * s(1);
            dq(1) = 2.0 * s(0);
            dq.tail(d - 2) = -2.0 * s.tail(d - 2);
            g = (-1.0 / q) * dq;
            H = (1.0 / (q * q)) * (dq * dq.transpose());
            H(0, 1) -= 2.0 / q;
            H(1, 0) -= 2.0 / q;
            for (int i = 2; i < d; ++i) H(i, i) += 2.0 / q;
            break;
        }
        case Cone::exp: {
            const double xv = s(0), yv = s(1), zv = s(2);
            const double lzy = std::log(zv / yv);
            const double psi = yv * lzy - xv;
            Eigen::Vector3d dpsi(-1.0, lzy - 1.0, yv / zv);
            Eigen::Vector3d g3 = -dpsi / psi;
            g3(1) -= 1.0 / yv;
            g3(2) -= 1.0 / zv;
            Eigen::Matrix3d hpsi = Eigen::Matrix3d::Zero();
            hpsi(1, 1) = -1.0 / yv;
            hpsi(1, 2) = hpsi(2, 1) = 1.0 / zv;
            hpsi(2, 2) = -yv / (zv * zv);
            Eigen::Matrix3d H3 = (dpsi * dpsi.transpose()) / (psi * psi) - hpsi / psi;
            H3(1, 1) += 1.0 / (yv * yv);
            H3(2, 2) += 1.0 / (zv * zv);
            g = g3;
            H = H3;
            break;
        }
        default: break;
    }
}

enum class CenterStatus { centered, early_exit, budget, max_steps, unbounded, stalled, singular };

class BarrierSolver {
  public:
    BarrierSolver(const Compiled& cp, const SolveOptions& opts) : cp_(cp), opts_(opts) {}

    int newton_steps = 0;
    // proximal anchor (used by phase 1 to remove null directions)
    double prox_sigma = 0.0;
    Eigen::VectorXd prox_ref;

    bool all_interior(const Eigen::VectorXd& x) const {
        for (const auto& blk : cp_.blocks)
            if (!interior(blk, block_values(blk, x))) return false;
        return true;
    }

    double objective_f(double t, const Eigen::VectorXd& x) const {
        double f = t * cp_.c.dot(x);
        for (const auto& blk : cp_.blocks) f += barrier_value(blk, block_values(blk, x));
        if (prox_sigma > 0.0) f += 0.5 * prox_sigma * (x - prox_ref).squaredNorm();
        return f;
    }

    /// damped Newton on min t*c.x + barrier(x)
    CenterStatus center(double t, Eigen::VectorXd& x, int max_steps,
                        const std::function<bool(const Eigen::VectorXd&)>& early_exit = nullptr) {
        for (int it = 0; it < max_steps; ++it) {
            if (newton_steps >= opts_.max_newton) return CenterStatus::budget;
            if (cp_.c.dot(x) < -1e10) return CenterStatus::unbounded;

            Eigen::VectorXd g = t * cp_.c;
            Eigen::MatrixXd H = Eigen::MatrixXd::Zero(cp_.n, cp_.n);
            for (const auto& blk : cp_.blocks) {
                const Eigen::VectorXd s = block_values(blk, x);
                Eigen::VectorXd gb;
                Eigen::MatrixXd Hb;
                barrier_derivs(blk, s, gb, Hb);
                const Eigen::VectorXd gl = blk.Ac.transpose() * gb;
                const Eigen::MatrixXd Hl = blk.Ac.transpose() * Hb * blk.Ac;
                const auto nv = static_cast<Eigen::Index>(blk.vars.size());
                for (Eigen::Index j = 0; j < nv; ++j) {
                    g(blk.vars[static_cast<size_t>(j)]) += gl(j);
                    for (Eigen::Index i = 0; i < nv; ++i)
                        H(blk.vars[static_cast<size_t>(i)], blk.vars[static_cast<size_t>(j)]) +=
                            Hl(i, j);
                }
            }
            if (prox_sigma > 0.0) {
                g += prox_sigma * (x - prox_ref);
                H.diagonal().array() += prox_sigma;
            }

            double reg = 1e-12 * (1.0 + H.diagonal().maxCoeff());
            Eigen::LLT<Eigen::MatrixXd> llt;
            for (;;) {
                Eigen::MatrixXd Hr = H;
                Hr.diagonal().array() += reg;
                llt.compute(Hr);
                if (llt.info() == Eigen::Success) break;
                reg *= 100.0;
                if (reg > 1e3 * (1.0 + H.diagonal().maxCoeff())) return CenterStatus::singular;
            }
            Eigen::VectorXd dx = -llt.solve(g);

            // trust cap against wild steps along near-null directions
            const double step_cap = 1e5 * (1.0 + x.norm());
            if (dx.norm() > step_cap) dx *= step_cap / dx.norm();

            const double dec2 = dx.dot(H.selfadjointView<Eigen::Lower>() * dx);
            const double lambda = std::sqrt(std::max(dec2, 0.0));
            if (lambda <= 0.03) return CenterStatus::centered;

            const double f0 = objective_f(t, x);
            const double slope = g.dot(dx);
            bool accepted = false;
            double alpha = 1.0;
            for (int ls = 0; ls < 60; ++ls) {
                const Eigen::VectorXd xt = x + alpha * dx;
                if (all_interior(xt)) {
                    const double ft = objective_f(t, xt);
                    if (ft <= f0 + 1e-4 * alpha * slope) {
                        x = xt;
                        accepted = true;
                        break;
                    }
                }
                alpha *= 0.5;
            }
            ++newton_steps;
            if (!accepted) return CenterStatus::stalled;
            if (early_exit && early_exit(x)) return CenterStatus::early_exit;
        }
        return CenterStatus::max_steps;
    }

    const Compiled& cp_;
    const SolveOptions& opts_;
};

/// Equality elimination: x = x_p + N z with N an orthonormal basis of the
/// null space of the equality rows.
struct Reduction {
    bool trivial = true;          // no equalities: x == z
    bool inconsistent = false;    // equality rows have no solution
    Eigen::VectorXd x_p;
    Eigen::MatrixXd N;            // n x nz
    int n_full = 0;

    Eigen::VectorXd lift(const Eigen::VectorXd& z) const {
        return trivial ? z : Eigen::VectorXd(x_p + N * z);
    }
    Eigen::VectorXd reduce_point(const Eigen::VectorXd& x) const {
        return trivial ? x : Eigen::VectorXd(N.transpose() * (x - x_p));
    }
};

inline Compiled compile(const ConicProgram& p, Reduction& red) {
    p.validate();
    red.n_full = p.n_vars;

    // split rows
    std::vector<SparseRow> eq_rows;
    std::vector<CompiledBlock> raw_blocks;
    CompiledBlock nn;
    nn.tag = Cone::nonneg;
    for (const auto& blk : p.blocks) {
        if (blk.tag == Cone::zero) {
            for (const auto& row : blk.rows) eq_rows.push_back(to_sparse(row));
            continue;
        }
        if (blk.tag == Cone::nonneg) {
            for (const auto& row : blk.rows) nn.rows.push_back(to_sparse(row));
            continue;
        }
        CompiledBlock c2;
        c2.tag = blk.tag;
        for (const auto& row : blk.rows) c2.rows.push_back(to_sparse(row));
        c2.nu = (blk.tag == Cone::exp) ? 3.0 : 2.0;
        raw_blocks.push_back(std::move(c2));
    }
    if (!nn.rows.empty()) {
        nn.nu = static_cast<double>(nn.rows.size());
        raw_blocks.push_back(std::move(nn));
    }

    red.trivial = eq_rows.empty();
    Compiled cp;
    if (red.trivial) {
        cp.n = p.n_vars;
        cp.c = -p.objective;
        cp.blocks = std::move(raw_blocks);
        for (auto& blk : cp.blocks) finalize_block(blk);
        for (const auto& blk : cp.blocks) cp.nu += blk.nu;
        return cp;
    }

    const auto m = static_cast<Eigen::Index>(eq_rows.size());
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(m, p.n_vars);
    Eigen::VectorXd e(m);
    for (Eigen::Index r = 0; r < m; ++r) {
        for (const auto& [i, c] : eq_rows[static_cast<size_t>(r)].terms) E(r, i) += c;
        e(r) = eq_rows[static_cast<size_t>(r)].constant;
    }
    // minimum-norm particular solution and null-space basis from QR of E^T
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(E);
    red.x_p = cod.solve(-e);
    if ((E * red.x_p + e).lpNorm<Eigen::Infinity>() >
        1e-8 * (1.0 + e.lpNorm<Eigen::Infinity>())) {
        red.inconsistent = true;
        return cp;
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(E.transpose());
    const Eigen::MatrixXd Q = qr.householderQ();
    const auto rank = cod.rank();
    red.N = Q.rightCols(p.n_vars - rank);

    const auto nz = red.N.cols();
    cp.n = static_cast<int>(nz);
    cp.c = red.N.transpose() * (-p.objective);
    for (auto& blk : raw_blocks) {
        CompiledBlock b2;
        b2.tag = blk.tag;
        b2.nu = blk.nu;
        for (const auto& row : blk.rows) {
            Eigen::RowVectorXd a = Eigen::RowVectorXd::Zero(p.n_vars);
            for (const auto& [i, c] : row.terms) a(i) += c;
            const Eigen::RowVectorXd az = a * red.N;
            SparseRow r2;
            r2.constant = row.constant + a.dot(red.x_p);
            const double scale = az.lpNorm<Eigen::Infinity>();
            for (Eigen::Index j = 0; j < nz; ++j)
                if (std::abs(az(j)) > 1e-15 * (1.0 + scale))
                    r2.terms.emplace_back(static_cast<int>(j), az(j));
            b2.rows.push_back(std::move(r2));
        }
        finalize_block(b2);
        cp.blocks.push_back(std::move(b2));
    }
    for (const auto& blk : cp.blocks) cp.nu += blk.nu;
    return cp;
}

}  // namespace detail

/// Solves a conic program (maximize convention). Deterministic given
/// identical inputs and options.
inline SolveResult solve(const ConicProgram& prog, const SolveOptions& opts = {}) {
    using clock = std::chrono::steady_clock;
    const auto t_start = clock::now();
    SolveResult res;

    detail::Reduction red;
    detail::Compiled cp = detail::compile(prog, red);
    if (red.inconsistent) {
        res.status = SolveStatus::primal_infeasible;
        res.message = "equality rows are inconsistent";
        res.runtime_s = std::chrono::duration<double>(clock::now() - t_start).count();
        return res;
    }

    const double cs = prog.objective.size() ? prog.objective.lpNorm<Eigen::Infinity>() : 0.0;
    const bool pure_feasibility = (cs == 0.0);
    if (!pure_feasibility) cp.c /= cs;

    detail::BarrierSolver bs(cp, opts);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(cp.n);

    auto finish = [&](SolveStatus st, double gap_norm, const std::string& msg) {
        res.status = st;
        res.message = msg;
        res.iterations = bs.newton_steps;
        if (st == SolveStatus::optimal || st == SolveStatus::numerical_limit) {
            res.x = red.lift(z);
            res.objective = prog.objective.size() ? prog.objective.dot(res.x) : 0.0;
            res.gap = gap_norm * (pure_feasibility ? 1.0 : cs);
        }
        res.runtime_s = std::chrono::duration<double>(clock::now() - t_start).count();
        return res;
    };

    // all variables pinned by equalities: single candidate point
    if (cp.n == 0) {
        z.resize(0);
        Eigen::VectorXd x_full = red.lift(z);
        bool ok = true;
        for (const auto& blk : cp.blocks)
            if (!detail::interior(blk, detail::block_values(blk, x_full))) ok = false;
        return ok ? finish(SolveStatus::optimal, 0.0, "fully determined")
                  : finish(SolveStatus::primal_infeasible, 1e30, "fully determined, infeasible");
    }

    // ----- phase 1: find a strictly cone-interior point -------------------
    bool have_interior = false;
    if (opts.warm_start && opts.warm_start->size() == red.n_full &&
        opts.warm_start->allFinite()) {
        const Eigen::VectorXd z0 = red.reduce_point(*opts.warm_start);
        if (bs.all_interior(z0)) {
            z = z0;
            have_interior = true;
        }
    }
    if (!have_interior && bs.all_interior(z)) have_interior = true;  // origin works
    if (!have_interior && cp.blocks.empty()) have_interior = true;

    if (!have_interior) {
        // augmented program: shift every block along an interior ray by u,
        // minimize u until it turns negative
        detail::Compiled aug;
        aug.n = cp.n + 1;
        aug.c = Eigen::VectorXd::Zero(aug.n);
        aug.c(cp.n) = 1.0;
        aug.nu = cp.nu;
        const int u_idx = cp.n;
        for (const auto& blk : cp.blocks) {
            detail::CompiledBlock b2;
            b2.tag = blk.tag;
            b2.nu = blk.nu;
            b2.rows = blk.rows;
            switch (blk.tag) {
                case Cone::nonneg:
                    for (auto& row : b2.rows) row.terms.emplace_back(u_idx, 1.0);
                    break;
                case Cone::soc:
                    b2.rows[0].terms.emplace_back(u_idx, 1.0);
                    break;
                case Cone::rsoc:
                    b2.rows[0].terms.emplace_back(u_idx, 1.0);
                    b2.rows[1].terms.emplace_back(u_idx, 1.0);
                    break;
                case Cone::exp:
                    b2.rows[1].terms.emplace_back(u_idx, 1.0);
                    b2.rows[2].terms.emplace_back(u_idx, M_E);
                    break;
                default: break;
            }
            detail::finalize_block(b2);
            aug.blocks.push_back(std::move(b2));
        }

        Eigen::VectorXd za(aug.n);
        za.head(cp.n) = (opts.warm_start && opts.warm_start->size() == red.n_full &&
                         opts.warm_start->allFinite())
                            ? red.reduce_point(*opts.warm_start)
                            : Eigen::VectorXd::Zero(cp.n);
        detail::BarrierSolver bs1(aug, opts);
        double u0 = 1.0;
        za(u_idx) = u0;
        while (!bs1.all_interior(za)) {
            u0 *= 2.0;
            za(u_idx) = u0;
            if (u0 > 1e14)
                return finish(SolveStatus::numerical_limit, 1e30,
                              "phase 1: no interior shift found");
        }
        za(u_idx) = 2.0 * u0;

        // proximal anchor removes null directions of the phase-1 Hessian
        bs1.prox_sigma = 1e-8;
        bs1.prox_ref = za;

        const double eta = 1e-6 * (1.0 + std::abs(u0));
        auto early = [&](const Eigen::VectorXd& zv) { return zv(u_idx) < -eta; };
        double t1 = 1.0 / (1.0 + std::abs(za(u_idx)));
        bool feasible = false;
        bool clean_finish = false;
        for (int stage = 0; stage < 60; ++stage) {
            const auto st = bs1.center(t1, za, 100, early);
            if (za(u_idx) < -eta) {
                feasible = true;
                break;
            }
            if (st == detail::CenterStatus::early_exit) continue;  // recheck u
            if (st != detail::CenterStatus::centered) break;
            const double gap = aug.nu / t1;
            if (gap < 1e-10 * (1.0 + std::abs(za(u_idx)))) {
                clean_finish = true;
                break;
            }
            t1 *= opts.barrier_mu;
        }
        bs.newton_steps += bs1.newton_steps;
        if (!feasible && za(u_idx) < 0.0) feasible = true;
        if (!feasible) {
            if (clean_finish)
                return finish(SolveStatus::primal_infeasible, 1e30,
                              "phase 1: minimal cone shift is nonnegative");
            return finish(SolveStatus::numerical_limit, 1e30,
                          "phase 1 did not reach an interior point");
        }
        z = za.head(cp.n);
    }

    // ----- phase 2: follow the central path -------------------------------
    if (pure_feasibility) {
        bs.center(1.0, z, 60);
        return finish(SolveStatus::optimal, 0.0, "feasibility problem");
    }

    double t = 1.0;
    double gap_norm = std::numeric_limits<double>::infinity();
    int stalls = 0;
    for (int stage = 0; stage < 80; ++stage) {
        const auto st = bs.center(t, z, 120);
        gap_norm = cp.nu / t;
        const double obj_norm = cp.c.dot(z);
        if (st == detail::CenterStatus::unbounded)
            return finish(SolveStatus::dual_infeasible, gap_norm, "objective unbounded");
        if (!z.allFinite() || z.lpNorm<Eigen::Infinity>() > 1e13)
            return finish(SolveStatus::numerical_limit, gap_norm, "iterate diverged");
        if (st == detail::CenterStatus::budget)
            return finish(SolveStatus::numerical_limit, gap_norm, "newton budget exhausted");
        if (st == detail::CenterStatus::max_steps)
            return finish(SolveStatus::numerical_limit, gap_norm, "centering too slow");
        if (st == detail::CenterStatus::singular)
            return finish(SolveStatus::numerical_limit, gap_norm, "singular KKT system");
        if (st == detail::CenterStatus::stalled) {
            // a stall right at the centering tolerance is benign; repeated
            // stalls mean the path cannot be followed further
            if (++stalls >= 3)
                return finish(SolveStatus::numerical_limit, gap_norm, "line search stalled");
        }
        if (st == detail::CenterStatus::centered &&
            gap_norm <= opts.tol_gap_rel * (1.0 + std::abs(obj_norm)))
            return finish(SolveStatus::optimal, gap_norm, "");
        t *= opts.barrier_mu;
    }
    return finish(SolveStatus::numerical_limit, gap_norm, "stage limit reached");
}

}  // namespace cfris

#endif
