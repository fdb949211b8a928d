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

#ifndef CFRIS_TYPES_HPP
#define CFRIS_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace cfris {

using cxd = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

/// Network dimensions: N access points with N_t antennas each, L surfaces
/// with M reflecting elements each, K single-antenna users.
struct Dimensions {
    int n_aps = 1;            // N
    int antennas_per_ap = 1;  // N_t
    int n_ris = 1;            // L
    int elements_per_ris = 1; // M
    int n_users = 1;          // K

    int total_elements() const { return n_ris * elements_per_ris; }   // M*L
    int total_antennas() const { return n_aps * antennas_per_ap; }    // N*N_t

    void validate() const {
        if (n_aps < 1 || antennas_per_ap < 1 || n_ris < 1 || elements_per_ris < 1 ||
            n_users < 1)
            throw std::invalid_argument("Dimensions: all counts must be >= 1");
    }
};

/// True channels of one drop: direct AP-user vectors, RIS-user vectors,
/// AP-RIS matrices, and per-user noise power in watts.
struct ChannelSet {
    Dimensions dims;
    std::vector<std::vector<CVec>> direct;    // [n][k], length N_t
    std::vector<std::vector<CVec>> ris_user;  // [l][k], length M
    std::vector<std::vector<CMat>> ap_ris;    // [n][l], M x N_t
    RVec noise_power;                         // [k], watts, > 0

    void validate() const {
        dims.validate();
        const auto N = static_cast<size_t>(dims.n_aps);
        const auto L = static_cast<size_t>(dims.n_ris);
        const auto K = static_cast<size_t>(dims.n_users);
        if (direct.size() != N || ris_user.size() != L || ap_ris.size() != N ||
            noise_power.size() != dims.n_users)
            throw std::invalid_argument("ChannelSet: container sizes inconsistent");
        for (const auto& row : direct)
            if (row.size() != K) throw std::invalid_argument("ChannelSet: direct[n] size");
        for (int k = 0; k < dims.n_users; ++k)
            if (!(noise_power(k) > 0.0))
                throw std::invalid_argument("ChannelSet: noise power must be positive");
    }
};

/// Cascaded channels Z_{n,k} (blocks over l stacked vertically) and the
/// per-user horizontal aggregation Z_k = [Z_{1,k}, ..., Z_{N,k}].
struct CascadedChannel {
    Dimensions dims;
    std::vector<std::vector<CMat>> z;  // [n][k], (M*L) x N_t
    std::vector<CMat> z_agg;           // [k], (M*L) x (N*N_t)
};

/// Estimated CSI handed to the optimizer: per-link estimates with bounded
/// error radii. The optimizer never sees true channels.
struct CsiEstimate {
    Dimensions dims;
    std::vector<std::vector<CVec>> direct_hat;    // [n][k], length N_t
    std::vector<std::vector<CMat>> cascaded_hat;  // [n][k], (M*L) x N_t
    std::vector<std::vector<double>> eps_direct;  // [n][k]
    std::vector<std::vector<double>> eps_cascaded;// [n][k]
    RVec noise_power;                             // [k], watts

    /// stacked per-user direct estimate [h_{d,1,k}; ...; h_{d,N,k}]
    CVec direct_hat_stacked(int k) const {
        const int nt = dims.antennas_per_ap;
        CVec out(dims.total_antennas());
        for (int n = 0; n < dims.n_aps; ++n) out.segment(n * nt, nt) = direct_hat[n][k];
        return out;
    }

    /// per-user aggregation [Z_{1,k}, ..., Z_{N,k}], (M*L) x (N*N_t)
    CMat cascaded_hat_agg(int k) const {
        const int nt = dims.antennas_per_ap;
        CMat out(dims.total_elements(), dims.total_antennas());
        for (int n = 0; n < dims.n_aps; ++n)
            out.middleCols(n * nt, nt) = cascaded_hat[n][k];
        return out;
    }

    // per-user aggregated radii: eps_{d,k} = sqrt(sum_n eps_{d,n,k}^2), same
    // for the cascaded part, and the combined eps_k = eps_d + sqrt(ML) eps_c.
    double eps_d(int k) const {
        double s = 0.0;
        for (int n = 0; n < dims.n_aps; ++n) s += eps_direct[n][k] * eps_direct[n][k];
        return std::sqrt(s);
    }
    double eps_c(int k) const {
        double s = 0.0;
        for (int n = 0; n < dims.n_aps; ++n) s += eps_cascaded[n][k] * eps_cascaded[n][k];
        return std::sqrt(s);
    }
    double eps_total(int k) const {
        return eps_d(k) + std::sqrt(static_cast<double>(dims.total_elements())) * eps_c(k);
    }

    bool all_radii_zero() const {
        for (int n = 0; n < dims.n_aps; ++n)
            for (int k = 0; k < dims.n_users; ++k)
                if (eps_direct[n][k] != 0.0 || eps_cascaded[n][k] != 0.0) return false;
        return true;
    }
};

/// An estimate copy with all radii forced to zero (CSI treated as perfect).
inline CsiEstimate zero_radii(CsiEstimate est) {
    for (auto& row : est.eps_direct)
        for (auto& e : row) e = 0.0;
    for (auto& row : est.eps_cascaded)
        for (auto& e : row) e = 0.0;
    return est;
}

/// An estimate copy with the cascaded links removed entirely.
inline CsiEstimate strip_ris(CsiEstimate est) {
    for (auto& row : est.cascaded_hat)
        for (auto& z : row) z.setZero();
    for (auto& row : est.eps_cascaded)
        for (auto& e : row) e = 0.0;
    return est;
}

/// Joint precoder: column k is the stacked vector w_k = [w_{1,k}; ...; w_{N,k}].
struct Beamformer {
    Dimensions dims;
    CMat W;  // (N*N_t) x K

    static Beamformer zero(const Dimensions& d) {
        return {d, CMat::Zero(d.total_antennas(), d.n_users)};
    }

    CVec stacked(int k) const { return W.col(k); }

    /// w_{n,k}: AP n's block of user k's precoder
    Eigen::VectorXcd ap_block(int n, int k) const {
        return W.col(k).segment(static_cast<Eigen::Index>(n) * dims.antennas_per_ap,
                                dims.antennas_per_ap);
    }

    /// W_{-k}: all columns except k
    CMat minus_k(int k) const {
        CMat out(W.rows(), W.cols() - 1);
        Eigen::Index j = 0;
        for (Eigen::Index c = 0; c < W.cols(); ++c)
            if (c != k) out.col(j++) = W.col(c);
        return out;
    }

    double ap_power(int n) const {
        const int nt = dims.antennas_per_ap;
        return W.middleRows(static_cast<Eigen::Index>(n) * nt, nt).squaredNorm();
    }
};

/// RIS phase configuration, v in C^{M*L}. Unit modulus per element for a
/// feasible final design (within 1e-3 during P-CCP, exact after projection).
struct PhaseVector {
    Dimensions dims;
    CVec v;  // M*L

    Eigen::VectorXcd per_ris(int l) const {
        return v.segment(static_cast<Eigen::Index>(l) * dims.elements_per_ris,
                         dims.elements_per_ris);
    }

    /// element-wise projection v_m <- v_m / |v_m|
    void project_unit_modulus() {
        for (Eigen::Index m = 0; m < v.size(); ++m) {
            const double a = std::abs(v(m));
            v(m) = (a > 0.0) ? cxd(std::polar(1.0, std::arg(v(m)))) : cxd(1.0, 0.0);
        }
    }
};

}  // namespace cfris

#endif
