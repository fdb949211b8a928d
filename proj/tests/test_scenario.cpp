// SPDX-License-Identifier: Apache-2.0
//
// Scenario generation tests: topology statistics, the distance power law,
// Rician/Rayleigh channel draws, and bounded CSI error sampling.

#include <catch2/catch_amalgamated.hpp>
#include <sstream>

#include "cfris/scenario.hpp"

using namespace cfris;

namespace {
Topology tiny_topology(const SystemConfig& cfg) {
    Topology t;
    t.cell_radius_m = cfg.cell_radius_m;
    t.ap_positions = {{100.0, 0.0, cfg.ap_height_m}};
    t.ris_positions = {{10.0, 0.0, cfg.ris_height_m}};
    t.user_positions = {{0.0, 0.0, cfg.user_height_m}};
    return t;
}
}  // namespace

TEST_CASE("generate_topology: geometry, determinism, disk statistics") {
    SystemConfig cfg;
    cfg.dims = Dimensions{4, 2, 2, 4, 3};

    // R -> 0: everyone at the origin, AP distances = sqrt(100^2 + (20-1.5)^2)
    cfg.cell_radius_m = 1e-12;
    RngStream rng(5);
    const Topology t0 = generate_topology(cfg, rng);
    const double expect = std::sqrt(100.0 * 100.0 + 18.5 * 18.5);
    for (const auto& u : t0.user_positions)
        REQUIRE((t0.ap_positions[0] - u).norm() == Catch::Approx(expect).margin(1e-6));

    // determinism
    cfg.cell_radius_m = 100.0;
    RngStream r1(42), r2(42);
    const Topology a = generate_topology(cfg, r1);
    const Topology b = generate_topology(cfg, r2);
    for (size_t i = 0; i < a.user_positions.size(); ++i)
        REQUIRE((a.user_positions[i] - b.user_positions[i]).norm() == 0.0);
    for (size_t i = 0; i < a.ris_positions.size(); ++i)
        REQUIRE((a.ris_positions[i] - b.ris_positions[i]).norm() == 0.0);

    // mean radial position of uniform-disk users is (2/3) R
    RngStream r3(7);
    double acc = 0.0;
    int count = 0;
    SystemConfig cfg1 = cfg;
    cfg1.dims.n_users = 1;
    for (int i = 0; i < 10000; ++i) {
        const Topology t = generate_topology(cfg1, r3);
        acc += t.user_positions[0].head<2>().norm();
        ++count;
    }
    REQUIRE(acc / count == Catch::Approx(2.0 / 3.0 * 100.0).epsilon(0.02));

    SystemConfig bad = cfg;
    bad.cell_radius_m = -1.0;
    RngStream r4(1);
    REQUIRE_THROWS_AS(generate_topology(bad, r4), std::invalid_argument);
}

TEST_CASE("path_loss follows beta0 (d/d0)^-alpha") {
    REQUIRE(path_loss(1.0, 3.75) == Catch::Approx(1e-3).epsilon(1e-12));
    REQUIRE(10.0 * std::log10(path_loss(100.0, 3.75)) == Catch::Approx(-105.0).margin(1e-9));
    REQUIRE(10.0 * std::log10(path_loss(10.0, 2.2)) == Catch::Approx(-52.0).margin(1e-9));

    // monotone decreasing in d and in alpha
    double prev = 1.0;
    for (double d : {1.0, 2.0, 5.0, 20.0, 80.0}) {
        const double g = path_loss(d, 2.2);
        REQUIRE(g <= prev);
        prev = g;
    }
    REQUIRE(path_loss(50.0, 3.75) < path_loss(50.0, 2.2));

    // near-field guard clamps to d0
    const long before = near_field_clamps().load();
    REQUIRE(path_loss(0.1, 2.2) == Catch::Approx(path_loss(1.0, 2.2)));
    REQUIRE(near_field_clamps().load() == before + 1);

    REQUIRE_THROWS_AS(path_loss(1.0, 2.2, -30.0, 0.0), std::invalid_argument);
}

TEST_CASE("generate_channels: Rayleigh variance, Rician limit, determinism") {
    SystemConfig cfg;
    cfg.dims = Dimensions{1, 1, 1, 1, 1};
    const Topology topo = tiny_topology(cfg);

    // kappa = 0: cascaded links purely NLoS with entry variance beta
    {
        FadingParams f = cfg.fading;
        f.rician_kappa = 0.0;
        RngStream rng(11);
        const double d_ap_ris = (topo.ap_positions[0] - topo.ris_positions[0]).norm();
        const double beta = path_loss(d_ap_ris, f.alpha_cascaded);
        double acc = 0.0;
        const int n = 10000;
        for (int i = 0; i < n; ++i) {
            const ChannelSet ch = generate_channels(topo, f, cfg, rng);
            acc += std::norm(ch.ap_ris[0][0](0, 0));
        }
        REQUIRE(acc / n == Catch::Approx(beta).epsilon(0.05));
    }

    // kappa -> infinity: entries are the unit-modulus LoS scaled by sqrt(beta)
    {
        FadingParams f = cfg.fading;
        f.rician_kappa = 1e9;
        RngStream rng(12);
        const ChannelSet ch = generate_channels(topo, f, cfg, rng);
        const double d_ap_ris = (topo.ap_positions[0] - topo.ris_positions[0]).norm();
        const double beta = path_loss(d_ap_ris, f.alpha_cascaded);
        REQUIRE(std::abs(ch.ap_ris[0][0](0, 0)) == Catch::Approx(std::sqrt(beta)).epsilon(1e-3));
    }

    // direct links carry the alpha_direct power law (Rayleigh)
    {
        RngStream rng(13);
        const double d_au = (topo.ap_positions[0] - topo.user_positions[0]).norm();
        const double beta = path_loss(d_au, cfg.fading.alpha_direct);
        double acc = 0.0;
        const int n = 10000;
        for (int i = 0; i < n; ++i) {
            const ChannelSet ch = generate_channels(topo, cfg.fading, cfg, rng);
            acc += std::norm(ch.direct[0][0](0));
        }
        REQUIRE(acc / n == Catch::Approx(beta).epsilon(0.05));
    }

    // LoS cutoff: within the cutoff and kappa huge, the RIS-user entry is
    // deterministic sqrt(beta); beyond it the link is pure NLoS Rayleigh
    // with entry variance beta.
    {
        FadingParams f = cfg.fading;
        f.rician_kappa = 1e9;
        const double d_ru = (topo.ris_positions[0] - topo.user_positions[0]).norm();
        const double beta = path_loss(d_ru, f.alpha_cascaded);

        f.los_cutoff_m = 2.0 * d_ru;
        RngStream rng_in(14);
        const ChannelSet ch_in = generate_channels(topo, f, cfg, rng_in);
        REQUIRE(std::abs(ch_in.ris_user[0][0](0)) ==
                Catch::Approx(std::sqrt(beta)).epsilon(1e-3));

        f.los_cutoff_m = 0.5 * d_ru;
        RngStream rng_out(15);
        double acc = 0.0;
        const int n = 4000;
        for (int i = 0; i < n; ++i) {
            const ChannelSet ch = generate_channels(topo, f, cfg, rng_out);
            acc += std::norm(ch.ris_user[0][0](0));
        }
        REQUIRE(acc / n == Catch::Approx(beta).epsilon(0.10));
    }

    // determinism
    {
        SystemConfig c2;
        c2.dims = Dimensions{2, 2, 2, 4, 2};
        RngStream tr(20);
        const Topology t2 = generate_topology(c2, tr);
        RngStream g1(21), g2(21);
        const ChannelSet ca = generate_channels(t2, c2.fading, c2, g1);
        const ChannelSet cb = generate_channels(t2, c2.fading, c2, g2);
        REQUIRE((ca.ap_ris[1][0] - cb.ap_ris[1][0]).norm() == 0.0);
        REQUIRE((ca.direct[0][1] - cb.direct[0][1]).norm() == 0.0);
        REQUIRE((ca.ris_user[1][1] - cb.ris_user[1][1]).norm() == 0.0);
    }
}

TEST_CASE("sample_csi_error: exact radius on the sphere") {
    RngStream rng(31);
    const CVec truth = rng.cnormal_vector(6);

    auto [est0, r0] = sample_csi_error(truth, 0.0, rng);
    REQUIRE(r0 == 0.0);
    REQUIRE((est0 - truth).norm() == 0.0);

    auto [est, r] = sample_csi_error(truth, 0.1, rng);
    REQUIRE(r == Catch::Approx(0.1 * truth.norm()).epsilon(1e-14));
    REQUIRE((truth - est).norm() == Catch::Approx(r).epsilon(1e-12));
    REQUIRE(est.norm() >= 0.9 * truth.norm() - 1e-12);
    REQUIRE(est.norm() <= 1.1 * truth.norm() + 1e-12);

    const CMat mtruth = rng.cnormal_matrix(4, 3);
    auto [mest, mr] = sample_csi_error(mtruth, 0.25, rng);
    REQUIRE((mtruth - mest).norm() == Catch::Approx(mr).epsilon(1e-12));

    REQUIRE_THROWS_AS(sample_csi_error(truth, 1.0, rng), std::invalid_argument);
    REQUIRE_THROWS_AS(sample_csi_error(truth, -0.1, rng), std::invalid_argument);
}

TEST_CASE("generate_csi: per-link radii and containment") {
    SystemConfig cfg;
    cfg.dims = Dimensions{2, 2, 2, 4, 2};
    RngStream tr(41);
    const Topology topo = generate_topology(cfg, tr);
    RngStream cr(42);
    const ChannelSet ch = generate_channels(topo, cfg.fading, cfg, cr);
    const CascadedChannel casc = build_cascaded(ch);
    RngStream er(43);
    const CsiEstimate est = generate_csi(ch, casc, 0.05, 0.1, er);
    for (int n = 0; n < 2; ++n)
        for (int k = 0; k < 2; ++k) {
            REQUIRE((ch.direct[n][k] - est.direct_hat[n][k]).norm() ==
                    Catch::Approx(est.eps_direct[n][k]).epsilon(1e-10));
            REQUIRE((casc.z[n][k] - est.cascaded_hat[n][k]).norm() ==
                    Catch::Approx(est.eps_cascaded[n][k]).epsilon(1e-10));
            REQUIRE(est.eps_direct[n][k] == Catch::Approx(0.05 * ch.direct[n][k].norm()));
            REQUIRE(est.eps_cascaded[n][k] == Catch::Approx(0.1 * casc.z[n][k].norm()));
        }
}

TEST_CASE("scenario dump/load round-trip is exact") {
    SystemConfig cfg;
    cfg.dims = Dimensions{2, 2, 2, 3, 2};
    RngStream tr(51);
    const Topology topo = generate_topology(cfg, tr);
    RngStream cr(52);
    const ChannelSet ch = generate_channels(topo, cfg.fading, cfg, cr);

    std::stringstream ss;
    dump_scenario(ss, topo, ch);
    auto [topo2, ch2] = load_scenario(ss);
    REQUIRE(topo2.cell_radius_m == topo.cell_radius_m);
    for (size_t i = 0; i < topo.ap_positions.size(); ++i)
        REQUIRE((topo.ap_positions[i] - topo2.ap_positions[i]).norm() == 0.0);
    for (int n = 0; n < 2; ++n)
        for (int k = 0; k < 2; ++k)
            REQUIRE((ch.direct[n][k] - ch2.direct[n][k]).norm() == 0.0);
    for (int n = 0; n < 2; ++n)
        for (int l = 0; l < 2; ++l)
            REQUIRE((ch.ap_ris[n][l] - ch2.ap_ris[n][l]).norm() == 0.0);
    REQUIRE((ch.noise_power - ch2.noise_power).norm() == 0.0);
}
