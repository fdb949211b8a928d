// SPDX-License-Identifier: Apache-2.0
//
// Shared library of small conic problems with closed-form optima, used by
// the unit tests and the acceptance suite.

#ifndef CFRIS_TESTS_MICRO_SUITE_HPP
#define CFRIS_TESTS_MICRO_SUITE_HPP

#include <cmath>
#include <string>
#include <vector>

#include "cfris/conic.hpp"

namespace cfris::testing {

struct MicroProblem {
    std::string name;
    ConicProgram program;
    double optimum;  // maximize-convention optimal value
};

inline std::vector<MicroProblem> micro_suite() {
    std::vector<MicroProblem> out;

    {  // 1: maximize x s.t. x <= 3
        ProgramBuilder b;
        const int x = b.add_vars("x", 1);
        b.maximize(x, 1.0);
        b.add_nonneg(LinExpr(3.0) - LinExpr::variable(x));
        out.push_back({"lp_bound", b.build(), 3.0});
    }
    {  // 2: maximize x+y s.t. x+2y <= 4, 3x+y <= 6, x,y >= 0 -> 14/5
        ProgramBuilder b;
        const int x = b.add_vars("x", 1), y = b.add_vars("y", 1);
        b.maximize(x, 1.0);
        b.maximize(y, 1.0);
        b.add_nonneg(LinExpr(4.0) - LinExpr::variable(x) - 2.0 * LinExpr::variable(y));
        b.add_nonneg(LinExpr(6.0) - 3.0 * LinExpr::variable(x) - LinExpr::variable(y));
        b.add_nonneg(LinExpr::variable(x));
        b.add_nonneg(LinExpr::variable(y));
        out.push_back({"lp_vertex", b.build(), 14.0 / 5.0});
    }
    {  // 3: maximize x s.t. ||(x,y)|| <= 1
        ProgramBuilder b;
        const int x = b.add_vars("x", 1), y = b.add_vars("y", 1);
        b.maximize(x, 1.0);
        b.add_soc(LinExpr(1.0), {LinExpr::variable(x), LinExpr::variable(y)});
        out.push_back({"soc_disk", b.build(), 1.0});
    }
    {  // 4: minimize t s.t. ||(3,4)|| <= t -> t* = 5
        ProgramBuilder b;
        const int t = b.add_vars("t", 1);
        b.maximize(t, -1.0);
        b.add_soc(LinExpr::variable(t), {LinExpr(3.0), LinExpr(4.0)});
        out.push_back({"soc_345", b.build(), -5.0});
    }
    {  // 5: minimize u s.t. w^2 <= u, w = 2 -> u* = 4
        ProgramBuilder b;
        const int u = b.add_vars("u", 1), w = b.add_vars("w", 1);
        b.maximize(u, -1.0);
        b.add_rsoc(LinExpr::variable(u), LinExpr(0.5), {LinExpr::variable(w)});
        b.add_zero(LinExpr::variable(w) - LinExpr(2.0));
        out.push_back({"rsoc_square", b.build(), -4.0});
    }
    {  // 6: maximize t s.t. e^t <= 5 -> ln 5
        ProgramBuilder b;
        const int t = b.add_vars("t", 1);
        b.maximize(t, 1.0);
        b.add_exp(LinExpr::variable(t), LinExpr(1.0), LinExpr(5.0));
        out.push_back({"exp_log", b.build(), std::log(5.0)});
    }
    {  // 7: maximize g s.t. g^2 <= x*y, x = 4, y = 9 -> 6
        ProgramBuilder b;
        const int g = b.add_vars("g", 1);
        b.maximize(g, 1.0);
        b.add_rsoc(LinExpr(2.0), LinExpr(9.0), {LinExpr::variable(g)});
        out.push_back({"rsoc_geomean", b.build(), 6.0});
    }
    {  // 8: minimize x^2+y^2 s.t. x+y = 2 -> 2 at (1,1)
        ProgramBuilder b;
        const int x = b.add_vars("x", 1), y = b.add_vars("y", 1), u = b.add_vars("u", 1);
        b.maximize(u, -1.0);
        b.add_rsoc(LinExpr::variable(u), LinExpr(0.5),
                   {LinExpr::variable(x), LinExpr::variable(y)});
        b.add_zero(LinExpr::variable(x) + LinExpr::variable(y) - LinExpr(2.0));
        out.push_back({"qp_projection", b.build(), -2.0});
    }
    {  // 9: maximize t s.t. t <= log z, z <= 3 -> ln 3
        ProgramBuilder b;
        const int t = b.add_vars("t", 1), z = b.add_vars("z", 1);
        b.maximize(t, 1.0);
        b.add_exp(LinExpr::variable(t), LinExpr(1.0), LinExpr::variable(z));
        b.add_nonneg(LinExpr(3.0) - LinExpr::variable(z));
        out.push_back({"exp_chain", b.build(), std::log(3.0)});
    }
    {  // 10: minimize u s.t. 1/x <= u, x = 2 -> 1/2 (2*u*x >= (sqrt 2)^2)
        ProgramBuilder b;
        const int u = b.add_vars("u", 1), x = b.add_vars("x", 1);
        b.maximize(u, -1.0);
        b.add_rsoc(LinExpr::variable(u), LinExpr::variable(x), {LinExpr(std::sqrt(2.0))});
        b.add_zero(LinExpr::variable(x) - LinExpr(2.0));
        out.push_back({"rsoc_inverse", b.build(), -0.5});
    }
    return out;
}

}  // namespace cfris::testing

#endif
