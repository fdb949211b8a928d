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

// Solver-agnostic conic program intermediate representation. A program is
// a linear objective (maximize) plus constraint blocks A x + b in K with
// K one of: zero (equality), nonneg, second-order cone, rotated
// second-order cone, exponential cone. Complex affine expressions are
// embedded as interleaved (real, imaginary) pairs.

#ifndef CFRIS_CONIC_HPP
#define CFRIS_CONIC_HPP

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "types.hpp"

namespace cfris {

enum class Cone { zero, nonneg, soc, rsoc, exp };

inline const char* cone_name(Cone c) {
    switch (c) {
        case Cone::zero: return "zero";
        case Cone::nonneg: return "nonneg";
        case Cone::soc: return "soc";
        case Cone::rsoc: return "rsoc";
        case Cone::exp: return "exp";
    }
    return "?";
}

/// Sparse affine expression sum_i coef_i x_i + constant.
struct LinExpr {
    std::vector<std::pair<int, double>> terms;
    double constant = 0.0;

    LinExpr() = default;
    explicit LinExpr(double c) : constant(c) {}
    static LinExpr variable(int idx, double coef = 1.0) {
        LinExpr e;
        e.terms.emplace_back(idx, coef);
        return e;
    }

    LinExpr& add(int idx, double coef) {
        if (coef != 0.0) terms.emplace_back(idx, coef);
        return *this;
    }
    LinExpr& operator+=(const LinExpr& o) {
        terms.insert(terms.end(), o.terms.begin(), o.terms.end());
        constant += o.constant;
        return *this;
    }
    LinExpr& operator-=(const LinExpr& o) {
        for (const auto& [i, c] : o.terms) terms.emplace_back(i, -c);
        constant -= o.constant;
        return *this;
    }
    LinExpr& operator*=(double s) {
        for (auto& [i, c] : terms) c *= s;
        constant *= s;
        return *this;
    }
    friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
    friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
    friend LinExpr operator*(double s, LinExpr a) { return a *= s; }

    bool is_zero() const { return terms.empty() && constant == 0.0; }

    double eval(const Eigen::VectorXd& x) const {
        double v = constant;
        for (const auto& [i, c] : terms) v += c * x(i);
        return v;
    }
};

/// Complex affine expression as a (real, imaginary) pair of LinExpr.
struct CLinExpr {
    LinExpr re, im;

    CLinExpr() = default;
    explicit CLinExpr(cxd c) : re(c.real()), im(c.imag()) {}
    CLinExpr(LinExpr r, LinExpr i) : re(std::move(r)), im(std::move(i)) {}

    bool is_real() const { return im.is_zero(); }

    CLinExpr& operator+=(const CLinExpr& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    friend CLinExpr operator+(CLinExpr a, const CLinExpr& b) { return a += b; }

    cxd eval(const Eigen::VectorXd& x) const { return {re.eval(x), im.eval(x)}; }
};

/// Real embedding of a complex affine expression: the (real, imaginary)
/// row pair, with the imaginary row dropped for purely real expressions.
inline std::vector<LinExpr> real_embedding(const CLinExpr& e) {
    if (e.is_real()) return {e.re};
    return {e.re, e.im};
}

/// One conic constraint block: rows(x) in cone.
struct ConeBlock {
    Cone tag = Cone::nonneg;
    std::vector<LinExpr> rows;
    std::string family;  // constraint family label, e.g. "C6" (diagnostics)

    int dim() const { return static_cast<int>(rows.size()); }

    /// number of distinct variables referenced by this block
    int n_vars_involved() const {
        std::vector<int> idx;
        for (const auto& r : rows)
            for (const auto& [i, c] : r.terms)
                if (c != 0.0) idx.push_back(i);
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
        return static_cast<int>(idx.size());
    }
};

/// Conic program: maximize objective . x subject to the cone blocks.
struct ConicProgram {
    int n_vars = 0;
    Eigen::VectorXd objective;  // length n_vars, maximize
    std::vector<ConeBlock> blocks;
    std::map<std::string, std::pair<int, int>> var_ranges;  // name -> (start, count)

    std::pair<int, int> range(const std::string& name) const {
        const auto it = var_ranges.find(name);
        if (it == var_ranges.end())
            throw std::invalid_argument("ConicProgram: unknown variable group " + name);
        return it->second;
    }

    Eigen::VectorXd extract(const std::string& name, const Eigen::VectorXd& x) const {
        const auto [start, count] = range(name);
        return x.segment(start, count);
    }

    /// extracts an interleaved complex variable group
    CVec extract_complex(const std::string& name, const Eigen::VectorXd& x) const {
        const auto [start, count] = range(name);
        if (count % 2 != 0)
            throw std::invalid_argument("ConicProgram: group " + name + " is not complex");
        CVec out(count / 2);
        for (int i = 0; i < count / 2; ++i)
            out(i) = cxd(x(start + 2 * i), x(start + 2 * i + 1));
        return out;
    }

    int count_blocks(const std::string& family) const {
        int n = 0;
        for (const auto& b : blocks)
            if (b.family == family) ++n;
        return n;
    }
    int count_blocks(const std::string& family, Cone tag) const {
        int n = 0;
        for (const auto& b : blocks)
            if (b.family == family && b.tag == tag) ++n;
        return n;
    }

    void validate() const {
        if (objective.size() != n_vars)
            throw std::invalid_argument("ConicProgram: objective length mismatch");
        for (const auto& blk : blocks) {
            for (const auto& row : blk.rows)
                for (const auto& [i, c] : row.terms) {
                    (void)c;
                    if (i < 0 || i >= n_vars)
                        throw std::invalid_argument("ConicProgram: row references invalid variable");
                }
            switch (blk.tag) {
                case Cone::soc:
                    if (blk.dim() < 2) throw std::invalid_argument("ConicProgram: soc dim >= 2");
                    break;
                case Cone::rsoc:
                    if (blk.dim() < 2) throw std::invalid_argument("ConicProgram: rsoc dim >= 2");
                    break;
                case Cone::exp:
                    if (blk.dim() != 3) throw std::invalid_argument("ConicProgram: exp dim == 3");
                    break;
                default: break;
            }
        }
    }

    /// Plain-text dump for solver-independent regression diffs.
    void dump(std::ostream& os) const {
        os << "cfris-conic v1\n";
        os << "vars " << n_vars << "\n";
        os << "maximize";
        for (int i = 0; i < n_vars; ++i)
            if (objective(i) != 0.0) os << " " << i << ":" << objective(i);
        os << "\n";
        for (const auto& [name, rng] : var_ranges)
            os << "group " << name << " " << rng.first << " " << rng.second << "\n";
        for (const auto& blk : blocks) {
            os << "block " << cone_name(blk.tag) << " dim " << blk.dim();
            if (!blk.family.empty()) os << " family " << blk.family;
            os << "\n";
            for (const auto& row : blk.rows) {
                os << "  row";
                for (const auto& [i, c] : row.terms) os << " " << i << ":" << c;
                os << " const " << row.constant << "\n";
            }
        }
    }
};

/// Incremental builder used by the subproblem constructors.
class ProgramBuilder {
  public:
    /// registers `count` real variables under `name`, returns start index
    int add_vars(const std::string& name, int count) {
        if (count <= 0) throw std::invalid_argument("add_vars: count must be positive");
        const int start = n_;
        n_ += count;
        if (!name.empty()) ranges_[name] = {start, count};
        return start;
    }

    /// registers `count` complex variables (2*count interleaved reals)
    int add_cvars(const std::string& name, int count) { return add_vars(name, 2 * count); }

    void maximize(int idx, double coef) { obj_.emplace_back(idx, coef); }

    /// complex variable accessor for interleaved storage
    CLinExpr cvar(int start, int i) const {
        return {LinExpr::variable(start + 2 * i), LinExpr::variable(start + 2 * i + 1)};
    }

    /// sum_i conj(z_i) * coef_i over a complex variable group (v^H q pattern)
    CLinExpr conj_dot(const CVec& coefs, int var_start) const {
        CLinExpr out;
        for (Eigen::Index i = 0; i < coefs.size(); ++i) {
            const double qr = coefs(i).real(), qi = coefs(i).imag();
            const int xr = var_start + 2 * static_cast<int>(i);
            out.re.add(xr, qr).add(xr + 1, qi);
            out.im.add(xr, qi).add(xr + 1, -qr);
        }
        return out;
    }

    /// sum_i coef_i * z_i over a complex variable group (h^H w pattern with
    /// coefs = conj(h))
    CLinExpr lin_dot(const CVec& coefs, int var_start) const {
        CLinExpr out;
        for (Eigen::Index i = 0; i < coefs.size(); ++i) {
            const double cr = coefs(i).real(), ci = coefs(i).imag();
            const int xr = var_start + 2 * static_cast<int>(i);
            out.re.add(xr, cr).add(xr + 1, -ci);
            out.im.add(xr, ci).add(xr + 1, cr);
        }
        return out;
    }

    void add_nonneg(LinExpr row, std::string family = {}) {
        blocks_.push_back({Cone::nonneg, {std::move(row)}, std::move(family)});
    }
    void add_zero(LinExpr row, std::string family = {}) {
        blocks_.push_back({Cone::zero, {std::move(row)}, std::move(family)});
    }
    /// head >= || tail ||
    void add_soc(LinExpr head, std::vector<LinExpr> tail, std::string family = {}) {
        std::vector<LinExpr> rows;
        rows.reserve(tail.size() + 1);
        rows.push_back(std::move(head));
        for (auto& t : tail) rows.push_back(std::move(t));
        blocks_.push_back({Cone::soc, std::move(rows), std::move(family)});
    }
    /// 2*x*y >= || tail ||^2, x, y >= 0
    void add_rsoc(LinExpr x, LinExpr y, std::vector<LinExpr> tail, std::string family = {}) {
        std::vector<LinExpr> rows;
        rows.reserve(tail.size() + 2);
        rows.push_back(std::move(x));
        rows.push_back(std::move(y));
        for (auto& t : tail) rows.push_back(std::move(t));
        blocks_.push_back({Cone::rsoc, std::move(rows), std::move(family)});
    }
    /// y * exp(x/y) <= z (y > 0)
    void add_exp(LinExpr x, LinExpr y, LinExpr z, std::string family = {}) {
        blocks_.push_back({Cone::exp, {std::move(x), std::move(y), std::move(z)}, std::move(family)});
    }

    /// |z| <= t as a 3-dim SOC (or 2-dim for purely real z)
    void add_abs_le(const CLinExpr& z, LinExpr t, std::string family = {}) {
        add_soc(std::move(t), real_embedding(z), std::move(family));
    }

    /// || complex vector || <= t as a (2n+1)-dim SOC
    void add_cnorm_le(const std::vector<CLinExpr>& entries, LinExpr t, std::string family = {}) {
        std::vector<LinExpr> tail;
        tail.reserve(2 * entries.size());
        for (const auto& e : entries) {
            tail.push_back(e.re);
            tail.push_back(e.im);
        }
        add_soc(std::move(t), std::move(tail), std::move(family));
    }

    int n_vars() const { return n_; }

    ConicProgram build() {
        ConicProgram p;
        p.n_vars = n_;
        p.objective = Eigen::VectorXd::Zero(n_);
        for (const auto& [i, c] : obj_) p.objective(i) += c;
        p.blocks = std::move(blocks_);
        p.var_ranges = std::move(ranges_);
        p.validate();
        return p;
    }

  private:
    int n_ = 0;
    std::vector<std::pair<int, double>> obj_;
    std::vector<ConeBlock> blocks_;
    std::map<std::string, std::pair<int, int>> ranges_;
};

}  // namespace cfris

#endif
