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

// Seeded scenario generation: topologies, Rician/Rayleigh fading with the
// distance power law, and bounded CSI errors drawn on the radius sphere.

#ifndef CFRIS_SCENARIO_HPP
#define CFRIS_SCENARIO_HPP

#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>
#include <vector>

#include "config.hpp"
#include "model.hpp"
#include "rng.hpp"
#include "types.hpp"

namespace cfris {

struct Topology {
    std::vector<Eigen::Vector3d> ap_positions;
    std::vector<Eigen::Vector3d> ris_positions;
    std::vector<Eigen::Vector3d> user_positions;
    double cell_radius_m = 0.0;
};

/// Count of near-field path-loss clamps (d < d0) since process start.
inline std::atomic<long>& near_field_clamps() {
    static std::atomic<long> count{0};
    return count;
}

/// beta = beta0 (d/d0)^(-alpha), linear gain. Distances below d0 are
/// clamped to d0 and counted in near_field_clamps().
inline double path_loss(double d, double alpha, double beta0_db = -30.0, double d0 = 1.0) {
    if (!(d0 > 0.0)) throw std::invalid_argument("path_loss: d0 must be positive");
    if (d < d0) {
        near_field_clamps()++;
        d = d0;
    }
    return db_to_linear(beta0_db) * std::pow(d / d0, -alpha);
}

/// APs on the fixed cross layout for N=4 (else evenly spaced on the 100 m
/// circle); RISs and users dropped i.i.d. uniform in the disk of radius R.
inline Topology generate_topology(const SystemConfig& cfg, RngStream& rng) {
    if (!(cfg.cell_radius_m > 0.0))
        throw std::invalid_argument("generate_topology: cell radius must be positive");
    Topology t;
    t.cell_radius_m = cfg.cell_radius_m;
    const int N = cfg.dims.n_aps;
    if (N == 4) {
        t.ap_positions = {{100.0, 0.0, cfg.ap_height_m},
                          {-100.0, 0.0, cfg.ap_height_m},
                          {0.0, 100.0, cfg.ap_height_m},
                          {0.0, -100.0, cfg.ap_height_m}};
    } else {
        for (int n = 0; n < N; ++n) {
            const double a = 2.0 * M_PI * n / N;
            t.ap_positions.push_back({100.0 * std::cos(a), 100.0 * std::sin(a), cfg.ap_height_m});
        }
    }
    for (int l = 0; l < cfg.dims.n_ris; ++l) {
        const auto p = rng.disk_point(cfg.cell_radius_m);
        t.ris_positions.push_back({p.x(), p.y(), cfg.ris_height_m});
    }
    for (int k = 0; k < cfg.dims.n_users; ++k) {
        const auto p = rng.disk_point(cfg.cell_radius_m);
        t.user_positions.push_back({p.x(), p.y(), cfg.user_height_m});
    }
    return t;
}

/// Steering vector of a half-wavelength ULA with m-th entry e^{j pi m sin(az)}.
inline CVec steering_vector(int n, double azimuth) {
    CVec a(n);
    for (int m = 0; m < n; ++m) a(m) = std::polar(1.0, M_PI * m * std::sin(azimuth));
    return a;
}

/// Channels per the simulation model: direct links Rayleigh with exponent
/// alpha_direct; AP-RIS and RIS-user links Rician with factor kappa and
/// exponent alpha_cascaded. LoS components are rank-one products of ULA
/// steering vectors at seeded random azimuths; RIS-user links beyond the
/// LoS cutoff distance fall back to pure NLoS.
inline ChannelSet generate_channels(const Topology& topo, const FadingParams& fading,
                                    const SystemConfig& cfg, RngStream& rng) {
    const Dimensions& d = cfg.dims;
    d.validate();
    ChannelSet ch;
    ch.dims = d;
    ch.noise_power = RVec::Constant(d.n_users, cfg.noise_watts());
    ch.direct.assign(d.n_aps, std::vector<CVec>(d.n_users));
    ch.ris_user.assign(d.n_ris, std::vector<CVec>(d.n_users));
    ch.ap_ris.assign(d.n_aps, std::vector<CMat>(d.n_ris));

    const double kap = fading.rician_kappa;
    const double los_w = std::sqrt(kap / (kap + 1.0));
    const double nlos_w = std::sqrt(1.0 / (kap + 1.0));

    for (int n = 0; n < d.n_aps; ++n) {
        for (int k = 0; k < d.n_users; ++k) {
            const double dist = (topo.ap_positions[n] - topo.user_positions[k]).norm();
            const double beta = path_loss(dist, fading.alpha_direct, fading.pathloss_ref_db,
                                          fading.ref_distance_m);
            ch.direct[n][k] = std::sqrt(beta) * rng.cnormal_vector(d.antennas_per_ap);
        }
    }
    for (int n = 0; n < d.n_aps; ++n) {
        for (int l = 0; l < d.n_ris; ++l) {
            const double dist = (topo.ap_positions[n] - topo.ris_positions[l]).norm();
            const double beta = path_loss(dist, fading.alpha_cascaded, fading.pathloss_ref_db,
                                          fading.ref_distance_m);
            const CVec a_rx = steering_vector(d.elements_per_ris,
                                              rng.uniform(-M_PI / 2.0, M_PI / 2.0));
            const CVec a_tx = steering_vector(d.antennas_per_ap,
                                              rng.uniform(-M_PI / 2.0, M_PI / 2.0));
            const CMat los = a_rx * a_tx.adjoint();
            const CMat nlos = rng.cnormal_matrix(d.elements_per_ris, d.antennas_per_ap);
            ch.ap_ris[n][l] = std::sqrt(beta) * (los_w * los + nlos_w * nlos);
        }
    }
    for (int l = 0; l < d.n_ris; ++l) {
        for (int k = 0; k < d.n_users; ++k) {
            const double dist = (topo.ris_positions[l] - topo.user_positions[k]).norm();
            const double beta = path_loss(dist, fading.alpha_cascaded, fading.pathloss_ref_db,
                                          fading.ref_distance_m);
            const bool has_los = dist <= fading.los_cutoff_m;
            const CVec a = steering_vector(d.elements_per_ris,
                                           rng.uniform(-M_PI / 2.0, M_PI / 2.0));
            const CVec nlos = rng.cnormal_vector(d.elements_per_ris);
            ch.ris_user[l][k] = has_los ? CVec(std::sqrt(beta) * (los_w * a + nlos_w * nlos))
                                        : CVec(std::sqrt(beta) * nlos);
        }
    }
    return ch;
}

/// Draws an error uniformly on the sphere of radius delta*||true|| and
/// returns (estimate, radius) with estimate = true - error, so that
/// ||true - estimate|| equals the radius exactly.
template <typename Block>
inline std::pair<Block, double> sample_csi_error(const Block& truth, double delta,
                                                 RngStream& rng) {
    if (delta < 0.0 || delta >= 1.0)
        throw std::invalid_argument("sample_csi_error: delta must lie in [0, 1)");
    const double radius = delta * truth.norm();
    if (radius == 0.0) return {truth, 0.0};
    Block err;
    if constexpr (Block::ColsAtCompileTime == 1)
        err = rng.sphere_vector(truth.rows(), radius);
    else
        err = rng.sphere_matrix(truth.rows(), truth.cols(), radius);
    return {Block(truth - err), radius};
}

/// Bounded CSI estimates for every link: direct blocks h_{d,n,k} at level
/// delta_d, cascaded blocks Z_{n,k} at level delta_c. The declared radii
/// are the exact generated ones (delta * ||true block||).
inline CsiEstimate generate_csi(const ChannelSet& ch, const CascadedChannel& casc,
                                double delta_d, double delta_c, RngStream& rng) {
    const Dimensions& d = ch.dims;
    CsiEstimate est;
    est.dims = d;
    est.noise_power = ch.noise_power;
    est.direct_hat.assign(d.n_aps, std::vector<CVec>(d.n_users));
    est.cascaded_hat.assign(d.n_aps, std::vector<CMat>(d.n_users));
    est.eps_direct.assign(d.n_aps, std::vector<double>(d.n_users, 0.0));
    est.eps_cascaded.assign(d.n_aps, std::vector<double>(d.n_users, 0.0));
    for (int n = 0; n < d.n_aps; ++n) {
        for (int k = 0; k < d.n_users; ++k) {
            auto [dh, rd] = sample_csi_error(ch.direct[n][k], delta_d, rng);
            est.direct_hat[n][k] = std::move(dh);
            est.eps_direct[n][k] = rd;
            auto [dz, rc] = sample_csi_error(casc.z[n][k], delta_c, rng);
            est.cascaded_hat[n][k] = std::move(dz);
            est.eps_cascaded[n][k] = rc;
        }
    }
    return est;
}

// ---------------------------------------------------------------------------
// Scenario dump/load: a plain-text fixture format for regression tests.
// Layout: header line, dimensions, then one line per position / complex
// entry in fixed order with hex-float precision.
// ---------------------------------------------------------------------------

inline void dump_scenario(std::ostream& os, const Topology& topo, const ChannelSet& ch) {
    os << "cfris-scenario v1\n";
    const auto& d = ch.dims;
    os << d.n_aps << ' ' << d.antennas_per_ap << ' ' << d.n_ris << ' '
       << d.elements_per_ris << ' ' << d.n_users << '\n';
    // 17 significant digits round-trip IEEE doubles exactly
    os << std::setprecision(17);
    os << topo.cell_radius_m << '\n';
    auto put3 = [&os](const Eigen::Vector3d& p) {
        os << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
    };
    for (const auto& p : topo.ap_positions) put3(p);
    for (const auto& p : topo.ris_positions) put3(p);
    for (const auto& p : topo.user_positions) put3(p);
    for (int k = 0; k < d.n_users; ++k) os << ch.noise_power(k) << '\n';
    auto put_c = [&os](const cxd& z) { os << z.real() << ' ' << z.imag() << '\n'; };
    for (const auto& row : ch.direct)
        for (const auto& vec : row)
            for (Eigen::Index i = 0; i < vec.size(); ++i) put_c(vec(i));
    for (const auto& row : ch.ris_user)
        for (const auto& vec : row)
            for (Eigen::Index i = 0; i < vec.size(); ++i) put_c(vec(i));
    for (const auto& row : ch.ap_ris)
        for (const auto& mat : row)
            for (Eigen::Index j = 0; j < mat.cols(); ++j)
                for (Eigen::Index i = 0; i < mat.rows(); ++i) put_c(mat(i, j));
}

inline std::pair<Topology, ChannelSet> load_scenario(std::istream& is) {
    std::string header, version;
    is >> header >> version;
    if (header != "cfris-scenario" || version != "v1")
        throw std::runtime_error("load_scenario: bad header");
    Dimensions d;
    is >> d.n_aps >> d.antennas_per_ap >> d.n_ris >> d.elements_per_ris >> d.n_users;
    d.validate();
    Topology topo;
    ChannelSet ch;
    ch.dims = d;
    is >> topo.cell_radius_m;
    auto get3 = [&is] {
        Eigen::Vector3d p;
        is >> p.x() >> p.y() >> p.z();
        return p;
    };
    for (int n = 0; n < d.n_aps; ++n) topo.ap_positions.push_back(get3());
    for (int l = 0; l < d.n_ris; ++l) topo.ris_positions.push_back(get3());
    for (int k = 0; k < d.n_users; ++k) topo.user_positions.push_back(get3());
    ch.noise_power.resize(d.n_users);
    for (int k = 0; k < d.n_users; ++k) is >> ch.noise_power(k);
    auto get_c = [&is] {
        double re, im;
        is >> re >> im;
        return cxd(re, im);
    };
    ch.direct.assign(d.n_aps, std::vector<CVec>(d.n_users));
    for (auto& row : ch.direct)
        for (auto& vec : row) {
            vec.resize(d.antennas_per_ap);
            for (Eigen::Index i = 0; i < vec.size(); ++i) vec(i) = get_c();
        }
    ch.ris_user.assign(d.n_ris, std::vector<CVec>(d.n_users));
    for (auto& row : ch.ris_user)
        for (auto& vec : row) {
            vec.resize(d.elements_per_ris);
            for (Eigen::Index i = 0; i < vec.size(); ++i) vec(i) = get_c();
        }
    ch.ap_ris.assign(d.n_aps, std::vector<CMat>(d.n_ris));
    for (auto& row : ch.ap_ris)
        for (auto& mat : row) {
            mat.resize(d.elements_per_ris, d.antennas_per_ap);
            for (Eigen::Index j = 0; j < mat.cols(); ++j)
                for (Eigen::Index i = 0; i < mat.rows(); ++i) mat(i, j) = get_c();
        }
    if (!is) throw std::runtime_error("load_scenario: truncated file");
    return {std::move(topo), std::move(ch)};
}

}  // namespace cfris

#endif
