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

// Pure mathematical domain model: cascaded/effective channels, SINR and
// rate, the arctangent l0 surrogate, closed-form worst-case bounds for the
// signal and interference terms under bounded CSI errors, the extremal
// perturbation constructions that attain them, and a sampling oracle.
// All functions here are pure and safe to call concurrently.

#ifndef CFRIS_MODEL_HPP
#define CFRIS_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rng.hpp"
#include "types.hpp"

namespace cfris {

/// Z = diag(conj(h_r)) * G: row m of the result is conj(h_r[m]) times row m of G.
inline CMat cascade_channel(const CVec& h_r, const CMat& G) {
    if (h_r.size() != G.rows())
        throw std::invalid_argument("cascade_channel: h_r length must equal rows of G");
    return h_r.conjugate().asDiagonal() * G;
}

/// Builds all Z_{n,k} (blocks over l stacked vertically) and the per-user
/// aggregations Z_k from a channel set.
inline CascadedChannel build_cascaded(const ChannelSet& ch) {
    const auto& d = ch.dims;
    CascadedChannel cc;
    cc.dims = d;
    cc.z.assign(d.n_aps, std::vector<CMat>(d.n_users));
    cc.z_agg.assign(d.n_users, CMat(d.total_elements(), d.total_antennas()));
    for (int n = 0; n < d.n_aps; ++n) {
        for (int k = 0; k < d.n_users; ++k) {
            CMat z(d.total_elements(), d.antennas_per_ap);
            for (int l = 0; l < d.n_ris; ++l)
                z.middleRows(static_cast<Eigen::Index>(l) * d.elements_per_ris,
                             d.elements_per_ris) =
                    cascade_channel(ch.ris_user[l][k], ch.ap_ris[n][l]);
            cc.z[n][k] = std::move(z);
        }
    }
    for (int k = 0; k < d.n_users; ++k)
        for (int n = 0; n < d.n_aps; ++n)
            cc.z_agg[k].middleCols(static_cast<Eigen::Index>(n) * d.antennas_per_ap,
                                   d.antennas_per_ap) = cc.z[n][k];
    return cc;
}

/// h_k = h_{d,k} + Z_k^H v (user-stacked effective channel).
inline CVec effective_channel(const CVec& h_d_stacked, const CMat& z_agg, const CVec& v) {
    if (z_agg.rows() != v.size() || z_agg.cols() != h_d_stacked.size())
        throw std::invalid_argument("effective_channel: dimension mismatch");
    return h_d_stacked + z_agg.adjoint() * v;
}

struct SinrRate {
    double sinr = 0.0;
    double rate = 0.0;  // bits/s/Hz
};

/// Exact SINR and rate of user k given all effective channels (columns of
/// h_eff) and the full precoder.
inline SinrRate sinr_and_rate(int k, const CMat& h_eff, const Beamformer& bf,
                              const RVec& noise_power) {
    const CVec hk = h_eff.col(k);
    const cxd sig = hk.dot(bf.W.col(k));  // h_k^H w_k (Eigen dot conjugates lhs)
    double interf = 0.0;
    for (Eigen::Index j = 0; j < bf.W.cols(); ++j) {
        if (j == k) continue;
        interf += std::norm(hk.dot(bf.W.col(j)));
    }
    SinrRate out;
    out.sinr = std::norm(sig) / (interf + noise_power(k));
    out.rate = std::log2(1.0 + out.sinr);
    return out;
}

struct L0Smooth {
    double value = 0.0;
    double gradient = 0.0;
};

/// Smooth l0 surrogate f(x) = (2/pi) atan(x / varpi) and its derivative,
/// for x >= 0, varpi > 0.
inline L0Smooth l0_smooth(double x, double varpi) {
    if (x < 0.0) throw std::invalid_argument("l0_smooth: x must be nonnegative");
    if (!(varpi > 0.0)) throw std::invalid_argument("l0_smooth: varpi must be positive");
    L0Smooth out;
    out.value = (2.0 / M_PI) * std::atan(x / varpi);
    out.gradient = 2.0 * varpi / (M_PI * (varpi * varpi + x * x));
    return out;
}

/// Closed-form worst case of the desired signal magnitude over the CSI
/// uncertainty balls: max{ |h_hat_k^H w_k| - eps_k ||w_k||, 0 }.
inline double worst_case_signal(const CVec& eff_hat_k, const CVec& w_k, double eps_k) {
    if (eps_k < 0.0) throw std::invalid_argument("worst_case_signal: eps_k must be >= 0");
    const double nominal = std::abs(eff_hat_k.dot(w_k));
    return std::max(nominal - eps_k * w_k.norm(), 0.0);
}

/// Upper bound on the worst-case interference norm:
/// ||h_hat_k^H W_{-k}|| + (eps_d + sqrt(ML) eps_c) ||W_{-k}||_F.
inline double interference_upper_bound(const CVec& eff_hat_k, const CMat& w_minus_k,
                                       double eps_d, double eps_c, int elements_per_ris,
                                       int n_ris) {
    if (eps_d < 0.0 || eps_c < 0.0)
        throw std::invalid_argument("interference_upper_bound: radii must be >= 0");
    if (w_minus_k.cols() == 0) return 0.0;
    const double ml = static_cast<double>(elements_per_ris) * n_ris;
    const double nominal = (eff_hat_k.adjoint() * w_minus_k).norm();
    return nominal + (eps_d + std::sqrt(ml) * eps_c) * w_minus_k.norm();
}

struct Perturbation {
    CVec delta_h;  // N*N_t
    CMat delta_z;  // (M*L) x (N*N_t)
};

/// Extremal error construction. In the regime |h_hat^H w| >= eps_k ||w||
/// the returned pair attains the closed-form worst case exactly; otherwise
/// it drives the perturbed signal to zero. Both satisfy ||dh|| <= eps_d,
/// ||dZ||_F <= eps_c.
inline Perturbation worst_case_perturbation(const CVec& h_d_hat_k, const CMat& z_hat_agg_k,
                                            const CVec& v, const CVec& w_k, double eps_d,
                                            double eps_c) {
    if (w_k.norm() == 0.0)
        throw std::invalid_argument("worst_case_perturbation: w_k must be nonzero");
    const double ml = static_cast<double>(v.size());
    const double sqrt_ml = std::sqrt(ml);
    const double eps_k = eps_d + sqrt_ml * eps_c;
    const CVec h_hat = effective_channel(h_d_hat_k, z_hat_agg_k, v);
    const cxd sig = h_hat.dot(w_k);  // h_hat^H w_k
    const double wn = w_k.norm();

    Perturbation p;
    if (std::abs(sig) >= eps_k * wn) {
        const cxd phase = (std::abs(sig) > 0.0) ? sig / std::abs(sig) : cxd(1.0, 0.0);
        // delta_h enters the signal through delta_h^H w, so its phase factor
        // is conjugated; delta_z enters through v^H delta_z w and is not.
        p.delta_h = -(eps_d * std::conj(phase) / wn) * w_k;
        p.delta_z = -(eps_c * phase / (sqrt_ml * wn)) * (v * w_k.adjoint());
    } else {
        const double wn2 = wn * wn;
        p.delta_h = -(eps_d / (eps_d + sqrt_ml * eps_c)) * (w_k * (w_k.dot(h_hat))) / wn2;
        p.delta_z = -(eps_c / (sqrt_ml * eps_d + ml * eps_c)) *
                    (v * (h_hat.dot(w_k) * w_k.adjoint())) / wn2;
    }
    return p;
}

/// Guaranteed lower bound on each user's worst-case rate, from the
/// closed-form signal bound and the interference upper bound:
/// log2(1 + S_k^2 / (I_k^2 + sigma_k^2)).
inline RVec worst_case_user_rates(const Beamformer& bf, const CVec& v,
                                  const CsiEstimate& csi) {
    const int K = csi.dims.n_users;
    RVec rates(K);
    for (int k = 0; k < K; ++k) {
        const CVec eff = effective_channel(csi.direct_hat_stacked(k), csi.cascaded_hat_agg(k), v);
        const double s = worst_case_signal(eff, bf.W.col(k), csi.eps_total(k));
        const double i = interference_upper_bound(eff, bf.minus_k(k), csi.eps_d(k),
                                                  csi.eps_c(k), csi.dims.elements_per_ris,
                                                  csi.dims.n_ris);
        const double sinr = s * s / (i * i + csi.noise_power(k));
        rates(k) = std::log2(1.0 + sinr);
    }
    return rates;
}

inline double worst_case_sum_rate(const Beamformer& bf, const CVec& v,
                                  const CsiEstimate& csi) {
    return worst_case_user_rates(bf, v, csi).sum();
}

/// Sampling oracle: minimum exact rate per user over n_samples joint
/// perturbations drawn uniformly on the boundary spheres of the per-user
/// aggregated uncertainty balls. Deterministic given the stream.
inline RVec sampled_worst_case(const Beamformer& bf, const CVec& v, const CsiEstimate& csi,
                               int n_samples, RngStream& rng) {
    if (n_samples < 1) throw std::invalid_argument("sampled_worst_case: n_samples >= 1");
    const int K = csi.dims.n_users;
    const Eigen::Index nt_total = csi.dims.total_antennas();
    const Eigen::Index ml = csi.dims.total_elements();
    RVec worst(K);
    for (int k = 0; k < K; ++k) {
        const CVec h_d = csi.direct_hat_stacked(k);
        const CMat z = csi.cascaded_hat_agg(k);
        const double ed = csi.eps_d(k);
        const double ec = csi.eps_c(k);
        double min_rate = std::numeric_limits<double>::infinity();
        for (int s = 0; s < n_samples; ++s) {
            CVec dh = (ed > 0.0) ? CVec(rng.sphere_vector(nt_total, ed))
                                 : CVec(CVec::Zero(nt_total));
            CMat dz = (ec > 0.0) ? CMat(rng.sphere_matrix(ml, nt_total, ec))
                                 : CMat(CMat::Zero(ml, nt_total));
            const CVec h = effective_channel(h_d + dh, z + dz, v);
            const cxd sig = h.dot(bf.W.col(k));
            double interf = 0.0;
            for (Eigen::Index j = 0; j < bf.W.cols(); ++j) {
                if (j == k) continue;
                interf += std::norm(h.dot(bf.W.col(j)));
            }
            const double rate =
                std::log2(1.0 + std::norm(sig) / (interf + csi.noise_power(k)));
            min_rate = std::min(min_rate, rate);
        }
        worst(k) = min_rate;
    }
    return worst;
}

/// Nominal rates pretending the estimates are exact (zero radii).
inline RVec nominal_user_rates(const Beamformer& bf, const CVec& v, const CsiEstimate& csi) {
    const int K = csi.dims.n_users;
    CMat h_eff(csi.dims.total_antennas(), K);
    for (int k = 0; k < K; ++k)
        h_eff.col(k) = effective_channel(csi.direct_hat_stacked(k), csi.cascaded_hat_agg(k), v);
    RVec rates(K);
    for (int k = 0; k < K; ++k)
        rates(k) = sinr_and_rate(k, h_eff, bf, csi.noise_power).rate;
    return rates;
}

}  // namespace cfris

#endif
