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

#ifndef CFRIS_RNG_HPP
#define CFRIS_RNG_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace cfris {

// splitmix64 finalizer, used to derive independent stream seeds from
// (master seed, salt...) tuples.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    return mix64(mix64(mix64(mix64(master) ^ a) ^ b) ^ c);
}

/// Deterministic random stream. All distributions are generated from raw
/// mt19937_64 output with fixed in-library transforms, so identical seeds
/// give bitwise-identical sequences on every platform with IEEE doubles.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }

    // uniform on [0, 1)
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // uniform on [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // standard normal via Box-Muller, second value cached
    double normal() {
        if (has_cache_) {
            has_cache_ = false;
            return cache_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        cache_ = r * std::sin(a);
        has_cache_ = true;
        return r * std::cos(a);
    }

    // standard complex normal CN(0,1): real and imaginary parts N(0, 1/2)
    std::complex<double> cnormal() {
        const double s = M_SQRT1_2;
        const double re = s * normal();
        const double im = s * normal();
        return {re, im};
    }

    Eigen::VectorXcd cnormal_vector(Eigen::Index n) {
        Eigen::VectorXcd out(n);
        for (Eigen::Index i = 0; i < n; ++i) out(i) = cnormal();
        return out;
    }

    Eigen::MatrixXcd cnormal_matrix(Eigen::Index rows, Eigen::Index cols) {
        Eigen::MatrixXcd out(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j)
            for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = cnormal();
        return out;
    }

    /// Uniform direction on the complex unit sphere in C^n, scaled to `radius`.
    Eigen::VectorXcd sphere_vector(Eigen::Index n, double radius) {
        Eigen::VectorXcd g = cnormal_vector(n);
        const double nrm = g.norm();
        if (nrm == 0.0) {
            g.setZero();
            g(0) = 1.0;
            return radius * g;
        }
        return (radius / nrm) * g;
    }

    /// Uniform direction on the Frobenius sphere of complex matrices, scaled to `radius`.
    Eigen::MatrixXcd sphere_matrix(Eigen::Index rows, Eigen::Index cols, double radius) {
        Eigen::MatrixXcd g = cnormal_matrix(rows, cols);
        const double nrm = g.norm();
        if (nrm == 0.0) {
            g.setZero();
            g(0, 0) = 1.0;
            return radius * g;
        }
        return (radius / nrm) * g;
    }

    // uniform point in the disk of radius R (2D)
    Eigen::Vector2d disk_point(double R) {
        const double r = R * std::sqrt(uniform01());
        const double a = 2.0 * M_PI * uniform01();
        return {r * std::cos(a), r * std::sin(a)};
    }

  private:
    std::mt19937_64 eng_;
    double cache_ = 0.0;
    bool has_cache_ = false;
};

}  // namespace cfris

#endif
