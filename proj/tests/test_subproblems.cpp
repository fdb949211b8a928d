// SPDX-License-Identifier: Apache-2.0
//
// Subproblem builder tests: tangency of every linearization at its
// expansion point, restriction (surrogate feasible implies original
// feasible), cone inventories on tiny instances, and the closed-form
// single-user precoding optimum.

#include <catch2/catch_amalgamated.hpp>

#include "cfris/algorithms.hpp"
#include "cfris/baselines.hpp"
#include "cfris/solver.hpp"
#include "cfris/subproblems.hpp"
#include "test_instances.hpp"

using namespace cfris;
using cfris::testing::Instance;
using cfris::testing::make_instance;

namespace {

DesignIterate start_iterate(const Instance& ins, std::uint64_t seed) {
    RngStream rng(derive_seed(seed, 9));
    return initialize(ins.est, ins.cfg, rng);
}

double eval_expr(const LinExpr& e, const Eigen::VectorXd& x) { return e.eval(x); }

}  // namespace

TEST_CASE("linearize_quad_over_lin: tangency, under-estimation, degenerate start") {
    const auto q = linearize_quad_over_lin(2.0, 1.0);
    REQUIRE(q.c_alpha == Catch::Approx(4.0));
    REQUIRE(q.c_beta == Catch::Approx(4.0));
    REQUIRE(q.c_alpha * 2.0 - q.c_beta * 1.0 == Catch::Approx(4.0));  // = 2^2/1

    // global under-estimator on a grid
    RngStream rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        const double at = rng.uniform(0.0, 5.0), bt = rng.uniform(0.1, 5.0);
        const auto c = linearize_quad_over_lin(at, bt);
        for (int i = 0; i < 1000; ++i) {
            const double a = rng.uniform(0.0, 10.0), b = rng.uniform(0.05, 10.0);
            REQUIRE(c.c_alpha * a - c.c_beta * b <= a * a / b + 1e-9);
        }
    }

    const auto z = linearize_quad_over_lin(0.0, 1.0);
    REQUIRE(z.c_alpha == 0.0);
    REQUIRE(z.c_beta == 0.0);

    REQUIRE_THROWS_AS(linearize_quad_over_lin(1.0, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(linearize_quad_over_lin(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("phase program: tiny-instance cone inventory") {
    SystemConfig cfg;
    cfg.dims = Dimensions{1, 1, 1, 2, 1};  // N=1, N_t=1, M=2, L=1, K=1
    Instance ins = make_instance(11, cfg);
    DesignIterate it = start_iterate(ins, 11);
    const ConicProgram p = build_phase_subproblem(ins.est, it, 1.0, cfg);

    const int K = 1, N = 1, ML = 2;
    // hand inventory of the encoding: v (2*ML reals), gamma/alpha/beta/t
    // (K each), c1 (N), c2 (K), c3 (ML); no s6 for a single user
    REQUIRE(p.n_vars == 2 * ML + 4 * K + N + K + ML);
    // published inventory: K signal rows over ML phase vars, K interference
    // cones, ML + ML modulus rows
    REQUIRE(p.count_blocks("C5") == K);
    REQUIRE(p.count_blocks("C6") == K);
    REQUIRE(p.count_blocks("C11", Cone::rsoc) == ML);
    REQUIRE(p.count_blocks("C12", Cone::nonneg) == ML);
    REQUIRE(p.count_blocks("C3") == N);
    REQUIRE(p.count_blocks("C7") == K);
    REQUIRE(p.count_blocks("Obj", Cone::exp) == K);
    // K = 1 leaves no interference norm, only the noise floor row
    REQUIRE(p.count_blocks("C6", Cone::soc) == 0);
    REQUIRE(p.count_blocks("C6", Cone::nonneg) == K);

    // the signal row involves all ML phase elements (2*ML reals) + alpha + c2
    for (const auto& blk : p.blocks)
        if (blk.family == "C5") REQUIRE(blk.n_vars_involved() == 2 * ML + 2);
}

TEST_CASE("phase program: multi-user inventory carries one SOC per user") {
    SystemConfig cfg;
    cfg.dims = Dimensions{2, 2, 1, 4, 3};
    Instance ins = make_instance(13, cfg);
    DesignIterate it = start_iterate(ins, 13);
    const ConicProgram p = build_phase_subproblem(ins.est, it, 2.0, cfg);
    const int K = 3, ML = 4;
    REQUIRE(p.count_blocks("C5") == K);
    REQUIRE(p.count_blocks("C6", Cone::soc) == K);
    REQUIRE(p.count_blocks("C6r", Cone::rsoc) == K);
    REQUIRE(p.count_blocks("C11", Cone::rsoc) == ML);
    REQUIRE(p.count_blocks("C12", Cone::nonneg) == ML);
    // every C6 SOC involves the full phase vector
    for (const auto& blk : p.blocks)
        if (blk.family == "C6" && blk.tag == Cone::soc)
            REQUIRE(blk.n_vars_involved() >= 2 * ML);
}

TEST_CASE("phase program: tangency at the linearization point") {
    SystemConfig cfg = cfris::testing::small_config();
    Instance ins = make_instance(17, cfg);
    DesignIterate it = start_iterate(ins, 17);
    const ConicProgram p = build_phase_subproblem(ins.est, it, 1.0, cfg);

    Eigen::VectorXd x = Eigen::VectorXd::Zero(p.n_vars);
    const auto [v0, vcnt] = p.range("v");
    for (int m = 0; m < vcnt / 2; ++m) {
        x(v0 + 2 * m) = it.v.v(m).real();
        x(v0 + 2 * m + 1) = it.v.v(m).imag();
    }
    const auto set_group = [&](const std::string& name, const RVec& vals) {
        const auto [s, c] = p.range(name);
        REQUIRE(c == vals.size());
        x.segment(s, c) = vals;
    };
    set_group("gamma", it.gamma);
    set_group("alpha", it.alpha);
    set_group("beta", it.beta);

    // C12 tangency: at v = v^(t) with unit modulus the row evaluates to c3 = 0
    for (const auto& blk : p.blocks)
        if (blk.family == "C12")
            REQUIRE(eval_expr(blk.rows[0], x) == Catch::Approx(0.0).margin(1e-9));

    // C5 tangency: the linearized signal expression at v^(t) equals the
    // exact bound margin, and alpha was initialized to that bound
    const auto sc = cfris::detail_sub::make_scaled(ins.est);
    for (int k = 0; k < cfg.dims.n_users; ++k) {
        const CVec eff = effective_channel(sc.h_d[k], sc.Z[k], it.v.v);
        const double expected =
            std::abs(eff.dot(it.W.W.col(k))) - sc.eps_k[k] * it.W.W.col(k).norm() -
            it.alpha(k);
        int seen = 0;
        for (const auto& blk : p.blocks)
            if (blk.family == "C5" && seen++ == k)
                REQUIRE(eval_expr(blk.rows[0], x) == Catch::Approx(expected).margin(1e-9));
    }

    // C7 tangency
    for (int k = 0; k < cfg.dims.n_users; ++k) {
        const auto q = linearize_quad_over_lin(it.alpha(k), it.beta(k));
        REQUIRE(q.c_alpha * it.alpha(k) - q.c_beta * it.beta(k) ==
                Catch::Approx(it.alpha(k) * it.alpha(k) / it.beta(k)).margin(1e-12));
    }
}

TEST_CASE("phase program solution satisfies the original nonconvex constraints") {
    SystemConfig cfg = cfris::testing::small_config();
    for (std::uint64_t seed : {21, 22, 23}) {
        Instance ins = make_instance(seed, cfg);
        DesignIterate it = start_iterate(ins, seed);
        const ConicProgram p = build_phase_subproblem(ins.est, it, 5.0, cfg);
        const SolveResult res = solve(p);
        REQUIRE(res.status == SolveStatus::optimal);

        const CVec v_star = p.extract_complex("v", res.x);
        const RVec gamma = p.extract("gamma", res.x);
        const RVec alpha = p.extract("alpha", res.x);
        const RVec beta = p.extract("beta", res.x);
        const RVec c1 = p.extract("c1", res.x);
        const RVec c2 = p.extract("c2", res.x);
        const RVec c3 = p.extract("c3", res.x);
        const auto sc = cfris::detail_sub::make_scaled(ins.est);

        for (int k = 0; k < cfg.dims.n_users; ++k) {
            const CVec eff = effective_channel(sc.h_d[k], sc.Z[k], v_star);
            // restriction of the signal bound (up to the penalty slack)
            const double lhs =
                std::abs(eff.dot(it.W.W.col(k))) - sc.eps_k[k] * it.W.W.col(k).norm();
            REQUIRE(lhs >= alpha(k) - c2(k) - 1e-7);
            // interference bound chain feasible for the original constraint
            const double i_bound = interference_upper_bound(
                eff, it.W.minus_k(k), sc.eps_d[k], sc.eps_c[k], cfg.dims.elements_per_ris,
                cfg.dims.n_ris);
            REQUIRE(i_bound * i_bound + 1.0 <= beta(k) + 1e-6);
            // SINR coupling holds for the true quadratic-over-linear term
            REQUIRE(alpha(k) * alpha(k) / beta(k) >= gamma(k) - 1e-7);
        }
        for (int n = 0; n < cfg.dims.n_aps; ++n) {
            double lhs = 0.0;
            for (int k = 0; k < cfg.dims.n_users; ++k)
                lhs += l0_smooth(it.W.ap_block(n, k).squaredNorm(), cfg.algo.varpi).value *
                       std::log2(1.0 + gamma(k));
            REQUIRE(lhs <= cfg.backhaul_cap_se() + c1(n) + 1e-7);
        }
        // modulus box with slack
        for (Eigen::Index m = 0; m < v_star.size(); ++m)
            REQUIRE(std::norm(v_star(m)) <= 1.0 + c3(m) + 1e-9);
    }
}

TEST_CASE("precoding program: tiny-instance cone inventory") {
    SystemConfig cfg;
    cfg.dims = Dimensions{1, 1, 1, 2, 1};
    Instance ins = make_instance(31, cfg);
    DesignIterate it = start_iterate(ins, 31);
    const ConicProgram p = build_precoding_subproblem(ins.est, it, cfg);
    const int K = 1, N = 1;
    REQUIRE(p.count_blocks("C1", Cone::rsoc) == N);
    REQUIRE(p.count_blocks("C5", Cone::soc) == K);  // radii positive
    REQUIRE(p.count_blocks("C8", Cone::rsoc) == N);
    REQUIRE(p.count_blocks("C9", Cone::rsoc) == N * K);
    REQUIRE(p.count_blocks("C10", Cone::nonneg) == K);
    REQUIRE(p.count_blocks("C6", Cone::nonneg) == K);  // single user: noise floor

    SystemConfig cfg2;
    cfg2.dims = Dimensions{2, 2, 1, 2, 2};
    Instance ins2 = make_instance(32, cfg2);
    DesignIterate it2 = start_iterate(ins2, 32);
    const ConicProgram p2 = build_precoding_subproblem(ins2.est, it2, cfg2);
    REQUIRE(p2.count_blocks("C1", Cone::rsoc) == 2);
    REQUIRE(p2.count_blocks("C5", Cone::soc) == 2);
    REQUIRE(p2.count_blocks("C6", Cone::soc) == 2);
    REQUIRE(p2.count_blocks("C6F", Cone::soc) == 2);
    REQUIRE(p2.count_blocks("C6r", Cone::rsoc) == 2);
    REQUIRE(p2.count_blocks("C8", Cone::rsoc) == 2);
    REQUIRE(p2.count_blocks("C9", Cone::rsoc) == 4);
    // C1 involves all of one AP's precoder entries: K*N_t complex = 8 reals
    for (const auto& blk : p2.blocks)
        if (blk.family == "C1") REQUIRE(blk.n_vars_involved() == 2 * 2 * 2);
}

TEST_CASE("precoding program: backhaul split tangency at (a_t, b_t)") {
    SystemConfig cfg = cfris::testing::small_config();
    Instance ins = make_instance(41, cfg);
    DesignIterate it = start_iterate(ins, 41);
    const ConicProgram p = build_precoding_subproblem(ins.est, it, cfg);

    Eigen::VectorXd x = Eigen::VectorXd::Zero(p.n_vars);
    const auto [a0, acnt] = p.range("a");
    (void)acnt;
    for (int n = 0; n < cfg.dims.n_aps; ++n)
        for (int k = 0; k < cfg.dims.n_users; ++k)
            x(a0 + n * cfg.dims.n_users + k) = it.a(n, k);
    const auto [b0, bcnt] = p.range("b");
    (void)bcnt;
    for (int k = 0; k < cfg.dims.n_users; ++k) x(b0 + k) = it.b(k);

    int n = 0;
    for (const auto& blk : p.blocks) {
        if (blk.family != "C8") continue;
        // rsoc rows (rhs, 1/2, a_{n,k}+b_k ...): at the expansion point the
        // surrogate margin equals the exact margin 4cap - 4 sum_k a_t b_t
        const double rhs = eval_expr(blk.rows[0], x);
        double quad = 0.0;
        for (int i = 2; i < blk.dim(); ++i) {
            const double e = eval_expr(blk.rows[i], x);
            quad += e * e;
        }
        double exact = 4.0 * cfg.backhaul_cap_se();
        for (int k = 0; k < cfg.dims.n_users; ++k) exact -= 4.0 * it.a(n, k) * it.b(k);
        REQUIRE(rhs - quad == Catch::Approx(exact).margin(1e-9));
        ++n;
    }
    REQUIRE(n == cfg.dims.n_aps);
}

TEST_CASE("single-user robust-free precoding reaches the matched-filter optimum") {
    SystemConfig cfg;
    cfg.dims = Dimensions{2, 2, 1, 2, 1};
    cfg.delta_d = 0.0;
    cfg.delta_c = 0.0;
    cfg.backhaul_mbps = 1e9;  // effectively unconstrained
    Instance ins = make_instance(51, cfg);
    DesignIterate it = start_iterate(ins, 51);
    detail_algo::prepare_sca_start(it, ins.est, cfg, nullptr);
    auto res = sca_precoding(ins.est, it, cfg);
    REQUIRE(res.converged);

    // closed form: full power matched filtering per AP
    const CVec h = effective_channel(ins.est.direct_hat_stacked(0),
                                     ins.est.cascaded_hat_agg(0), it.v.v);
    double amp = 0.0;
    for (int n = 0; n < 2; ++n)
        amp += std::sqrt(cfg.power_watts()) *
               h.segment(2 * static_cast<Eigen::Index>(n), 2).norm();
    const double rate_opt = std::log2(1.0 + amp * amp / ins.est.noise_power(0));
    REQUIRE(res.objectives.back() == Catch::Approx(rate_opt).epsilon(1e-3));
}

TEST_CASE("refinement programs: cluster masks and cap behavior") {
    SystemConfig cfg = cfris::testing::small_config();
    Instance ins = make_instance(61, cfg);
    DesignIterate it = start_iterate(ins, 61);

    // empty clusters: backhaul rows reference no epigraph variables
    ClusterAssignment empty;
    empty.served.assign(cfg.dims.n_aps, {});
    const ConicProgram p_empty = build_refine_phase(ins.est, it, empty, 1.0, cfg);
    for (const auto& blk : p_empty.blocks)
        if (blk.family == "C13") REQUIRE(blk.n_vars_involved() == 1);  // only the slack

    // full clusters with a huge cap match the phase problem's optimum
    ClusterAssignment full;
    full.served.assign(cfg.dims.n_aps, {});
    for (int n = 0; n < cfg.dims.n_aps; ++n)
        for (int k = 0; k < cfg.dims.n_users; ++k) full.served[n].insert(k);
    SystemConfig cfg_huge = cfg;
    cfg_huge.backhaul_mbps = 1e9;
    const auto r1 = solve(build_refine_phase(ins.est, it, full, 1.0, cfg_huge));
    const auto r2 = solve(build_phase_subproblem(ins.est, it, 1.0, cfg_huge));
    REQUIRE(r1.status == SolveStatus::optimal);
    REQUIRE(r2.status == SolveStatus::optimal);
    REQUIRE(r1.objective == Catch::Approx(r2.objective).epsilon(1e-6));

    // masked precoders extract to exact zeros; the linearization point must
    // itself be masked and its bounds refreshed (as the refinement pass does)
    ClusterAssignment partial;
    partial.served.assign(cfg.dims.n_aps, {});
    partial.served[0].insert(0);
    partial.served[1].insert(1);
    DesignIterate it_mask = it;
    for (int n = 0; n < cfg.dims.n_aps; ++n)
        for (int k = 0; k < cfg.dims.n_users; ++k)
            if (!partial.serves(n, k))
                it_mask.W.W.col(k)
                    .segment(static_cast<Eigen::Index>(n) * cfg.dims.antennas_per_ap,
                             cfg.dims.antennas_per_ap)
                    .setZero();
    detail_algo::refresh_bounds(it_mask, ins.est);
    detail_algo::refresh_epigraphs(it_mask, cfg);
    detail_algo::clamp_gamma_for_backhaul(it_mask, cfg, &partial);
    const ConicProgram p_mask = build_refine_precoding(ins.est, it_mask, partial, cfg);
    const auto rm = solve(p_mask);
    REQUIRE(rm.status == SolveStatus::optimal);
    const Beamformer bf = extract_beamformer(p_mask, rm.x, cfg.dims, &partial);
    REQUIRE(bf.ap_block(0, 1).norm() == 0.0);
    REQUIRE(bf.ap_block(1, 0).norm() == 0.0);
    REQUIRE(bf.ap_block(0, 0).norm() > 0.0);

    // full clusters + huge cap match the unconstrained precoding program
    DesignIterate it2 = it;
    detail_algo::prepare_sca_start(it2, ins.est, cfg_huge, nullptr);
    const auto q1 = solve(build_refine_precoding(ins.est, it2, full, cfg_huge));
    const auto q2 = solve(build_precoding_subproblem(ins.est, it2, cfg_huge));
    REQUIRE(q1.status == SolveStatus::optimal);
    REQUIRE(q2.status == SolveStatus::optimal);
    REQUIRE(q1.objective == Catch::Approx(q2.objective).epsilon(1e-6));
}

TEST_CASE("refinement phase program: a single tight cluster caps the epigraph") {
    SystemConfig cfg;
    cfg.dims = Dimensions{1, 2, 1, 2, 1};
    cfg.power_dbm = 40.0;      // plenty of power
    cfg.backhaul_mbps = 20.0;  // tight cap: 20/(1.1*10) bits/s/Hz
    Instance ins = make_instance(71, cfg);
    DesignIterate it = start_iterate(ins, 71);
    ClusterAssignment one;
    one.served.assign(1, std::set<int>{0});
    const ConicProgram p = build_refine_phase(ins.est, it, one, 50.0, cfg);
    const auto res = solve(p);
    REQUIRE(res.status == SolveStatus::optimal);
    const double cap = cfg.backhaul_cap_se();
    const RVec t = p.extract("t", res.x);
    const RVec c1 = p.extract("c1", res.x);
    // the epigraph rides the cap exactly (modulo the penalty slack)
    REQUIRE(t(0) == Catch::Approx(cap + c1(0)).margin(1e-5));
}
