// SPDX-License-Identifier: Apache-2.0
//
// Conic IR and solver tests: real embedding of complex expressions, the
// closed-form micro-suite, determinism, status reporting, and the dump.

#include <catch2/catch_amalgamated.hpp>
#include <sstream>

#include "cfris/conic.hpp"
#include "cfris/rng.hpp"
#include "cfris/solver.hpp"
#include "micro_suite.hpp"

using namespace cfris;

TEST_CASE("real_embedding: scalar cases") {
    // |z| <= t with fixed z = 3+4i is feasible iff t >= 5
    {
        ProgramBuilder b;
        const int t = b.add_vars("t", 1);
        b.maximize(t, -1.0);
        b.add_abs_le(CLinExpr(cxd(3.0, 4.0)), LinExpr::variable(t));
        const auto res = solve(b.build());
        REQUIRE(res.status == SolveStatus::optimal);
        REQUIRE(-res.objective == Catch::Approx(5.0).epsilon(1e-7));
    }
    // purely real expression embeds to a single row
    CLinExpr real_expr{LinExpr(2.5), LinExpr()};
    REQUIRE(real_embedding(real_expr).size() == 1);
    CLinExpr complex_expr{LinExpr(2.5), LinExpr(1.0)};
    REQUIRE(real_embedding(complex_expr).size() == 2);
}

TEST_CASE("real_embedding: random affine map preserves the complex norm") {
    RngStream rng(3);
    ProgramBuilder b;
    const int z = b.add_cvars("z", 3);
    const int t = b.add_vars("t", 1);
    b.maximize(t, -1.0);

    const CVec zval = rng.cnormal_vector(3);
    // pin z to zval through zero cones
    for (int i = 0; i < 3; ++i) {
        CLinExpr zi = b.cvar(z, i);
        b.add_zero(zi.re - LinExpr(zval(i).real()));
        b.add_zero(zi.im - LinExpr(zval(i).imag()));
    }
    // rows of a random complex affine map A z + c
    const CMat A = rng.cnormal_matrix(2, 3);
    const CVec c = rng.cnormal_vector(2);
    std::vector<CLinExpr> entries;
    CVec expected(2);
    for (int r = 0; r < 2; ++r) {
        CLinExpr e{LinExpr(c(r).real()), LinExpr(c(r).imag())};
        for (int i = 0; i < 3; ++i) {
            // A(r,i) * z_i
            CVec coef = CVec::Zero(3);
            coef(i) = A(r, i);
            e += b.lin_dot(coef, z);
        }
        entries.push_back(e);
        expected(r) = (A.row(r) * zval)(0) + c(r);
    }
    b.add_cnorm_le(entries, LinExpr::variable(t));
    const auto res = solve(b.build());
    REQUIRE(res.status == SolveStatus::optimal);
    REQUIRE(-res.objective == Catch::Approx(expected.norm()).epsilon(1e-7));
}

TEST_CASE("conj_dot and lin_dot match complex arithmetic") {
    RngStream rng(5);
    ProgramBuilder b;
    const int v = b.add_cvars("v", 4);
    const CVec q = rng.cnormal_vector(4);
    const CVec vval = rng.cnormal_vector(4);
    Eigen::VectorXd x(8);
    for (int i = 0; i < 4; ++i) {
        x(2 * i) = vval(i).real();
        x(2 * i + 1) = vval(i).imag();
    }
    const CLinExpr vhq = b.conj_dot(q, v);
    const cxd expect_conj = vval.dot(q);  // v^H q
    REQUIRE(std::abs(vhq.eval(x) - expect_conj) < 1e-12);
    const CLinExpr cv = b.lin_dot(q, v);
    const cxd expect_lin = (q.transpose() * vval)(0);  // sum q_i v_i
    REQUIRE(std::abs(cv.eval(x) - expect_lin) < 1e-12);
}

TEST_CASE("micro-suite: ten closed-form problems at rel 1e-6") {
    for (const auto& mp : cfris::testing::micro_suite()) {
        INFO(mp.name);
        const auto res = solve(mp.program);
        REQUIRE(res.status == SolveStatus::optimal);
        REQUIRE(res.objective ==
                Catch::Approx(mp.optimum).epsilon(1e-6).margin(1e-9));
    }
}

TEST_CASE("solve is deterministic") {
    for (const auto& mp : cfris::testing::micro_suite()) {
        const auto a = solve(mp.program);
        const auto b = solve(mp.program);
        REQUIRE(std::abs(a.objective - b.objective) <= 1e-9);
        REQUIRE(a.iterations == b.iterations);
    }
}

TEST_CASE("solve reports infeasibility and rejects malformed programs") {
    {  // x >= 1 and -x >= 0 cannot hold
        ProgramBuilder b;
        const int x = b.add_vars("x", 1);
        b.maximize(x, 1.0);
        b.add_nonneg(LinExpr::variable(x) - LinExpr(1.0));
        b.add_nonneg(-1.0 * LinExpr::variable(x));
        const auto res = solve(b.build());
        REQUIRE(res.status == SolveStatus::primal_infeasible);
        REQUIRE(res.x.size() == 0);
    }
    {  // malformed: row references a variable out of range
        ConicProgram p;
        p.n_vars = 1;
        p.objective = Eigen::VectorXd::Zero(1);
        p.blocks.push_back({Cone::nonneg, {LinExpr::variable(3)}, ""});
        REQUIRE_THROWS_AS(solve(p), std::invalid_argument);
    }
    {  // unbounded: maximize x with no constraints involving it
        ProgramBuilder b;
        const int x = b.add_vars("x", 1);
        b.maximize(x, 1.0);
        b.add_nonneg(LinExpr::variable(x) + LinExpr(1.0));
        const auto res = solve(b.build());
        REQUIRE(res.status == SolveStatus::dual_infeasible);
    }
}

TEST_CASE("warm start skips phase 1 and reaches the same optimum") {
    ProgramBuilder b;
    const int x = b.add_vars("x", 1), y = b.add_vars("y", 1);
    b.maximize(x, 1.0);
    b.add_soc(LinExpr(1.0), {LinExpr::variable(x), LinExpr::variable(y)});
    const ConicProgram p = b.build();
    const auto cold = solve(p);
    SolveOptions opts;
    Eigen::VectorXd ws(2);
    ws << 0.0, 0.0;
    opts.warm_start = ws;
    const auto warm = solve(p, opts);
    REQUIRE(warm.status == SolveStatus::optimal);
    REQUIRE(warm.objective == Catch::Approx(cold.objective).epsilon(1e-7));
    REQUIRE(warm.iterations <= cold.iterations);
}

TEST_CASE("program dump lists variables, groups, and blocks") {
    ProgramBuilder b;
    const int x = b.add_vars("x", 2);
    b.maximize(x, 1.0);
    b.add_soc(LinExpr(1.0), {LinExpr::variable(x), LinExpr::variable(x + 1)}, "ball");
    const ConicProgram p = b.build();
    std::stringstream ss;
    p.dump(ss);
    const std::string s = ss.str();
    REQUIRE(s.find("cfris-conic v1") != std::string::npos);
    REQUIRE(s.find("vars 2") != std::string::npos);
    REQUIRE(s.find("block soc dim 3 family ball") != std::string::npos);
    REQUIRE(s.find("group x 0 2") != std::string::npos);
}

TEST_CASE("variable extraction by name") {
    ProgramBuilder b;
    const int z = b.add_cvars("z", 2);
    const int t = b.add_vars("t", 1);
    b.maximize(t, -1.0);
    std::vector<CLinExpr> entries = {b.cvar(z, 0), b.cvar(z, 1)};
    b.add_cnorm_le(entries, LinExpr::variable(t));
    b.add_zero(b.cvar(z, 0).re - LinExpr(1.0));
    b.add_zero(b.cvar(z, 0).im - LinExpr(2.0));
    b.add_zero(b.cvar(z, 1).re + LinExpr(0.5));
    b.add_zero(b.cvar(z, 1).im);
    const ConicProgram p = b.build();
    const auto res = solve(p);
    REQUIRE(res.status == SolveStatus::optimal);
    const CVec zv = p.extract_complex("z", res.x);
    REQUIRE(std::abs(zv(0) - cxd(1.0, 2.0)) < 1e-6);
    REQUIRE(std::abs(zv(1) - cxd(-0.5, 0.0)) < 1e-6);
    REQUIRE(res.objective == Catch::Approx(-zv.norm()).epsilon(1e-6));
}
