// SPDX-License-Identifier: Apache-2.0
//
// coexsim: uplink coexistence simulator for aerial and terrestrial mmWave users
// Copyright (C) 2026 The coexsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#include <catch2/catch_amalgamated.hpp>

#include "coexsim/channel.hpp"
#include "coexsim/errors.hpp"
#include "coexsim/units.hpp"
#include "oracles.hpp"

#include <filesystem>
#include <fstream>

// Covered tests:
// - UMi and aerial LOS probability values and monotonicity
// - Pathloss values, monotonicity and NLOS dominance
// - Realization structure: LOS path on the geometric ray, loss floor, phases, outage
// - Transmit covariance: rank one, trace identity, PSD, equal orthogonal paths
// - Effective SIMO channel: normalization, gamma re-summation, Friis closed form
// - Tabulated aerial LOS override

using namespace coexsim;
using Catch::Approx;

TEST_CASE("Channel - LOS probability")
{
    CHECK(los_probability(LinkKind::Terrestrial, 0.0) == 1.0);
    CHECK(los_probability(LinkKind::Terrestrial, 18.0) == 1.0);
    const double e = std::exp(-100.0 / 36.0);
    CHECK(los_probability(LinkKind::Terrestrial, 100.0) == Approx(0.18 * (1 - e) + e).epsilon(1e-12));
    CHECK(los_probability(LinkKind::Terrestrial, 100.0) == Approx(0.231).margin(5e-4));

    CHECK(los_probability(LinkKind::Aerial, 200.0) == Approx(0.5));
    for (double d = 0; d <= 100.0; d += 5.0)
        CHECK(los_probability(LinkKind::Aerial, d) >= 0.9);

    for (auto kind : {LinkKind::Terrestrial, LinkKind::Aerial})
    {
        double prev = 1.0;
        for (double d = 0.0; d <= 2000.0; d += 0.5)
        {
            const double p = los_probability(kind, d);
            REQUIRE(p <= prev + 1e-15);
            REQUIRE(p >= 0.0);
            prev = p;
        }
    }
}

TEST_CASE("Channel - pathloss")
{
    CHECK(pathloss_db(LinkKind::Terrestrial, LinkState::Los, 100.0, 28.0) ==
          Approx(32.4 + 42.0 + 20.0 * std::log10(28.0)));
    CHECK(pathloss_db(LinkKind::Terrestrial, LinkState::Los, 100.0, 28.0) == Approx(103.3).margin(0.05));
    CHECK(pathloss_db(LinkKind::Terrestrial, LinkState::Los, 10.0, 28.0) == Approx(82.3).margin(0.05));
    CHECK(pathloss_db(LinkKind::Terrestrial, LinkState::Nlos, 100.0, 28.0) ==
          Approx(22.4 + 70.6 + 21.3 * std::log10(28.0)));
    CHECK_THROWS_AS(pathloss_db(LinkKind::Aerial, LinkState::Outage, 100.0, 28.0), std::invalid_argument);

    for (auto kind : {LinkKind::Terrestrial, LinkKind::Aerial})
    {
        double prev_los = -1e9, prev_nlos = -1e9;
        for (double d = 10.0; d <= 5000.0; d *= 1.01)
        {
            const double los = pathloss_db(kind, LinkState::Los, d, 28.0);
            const double nlos = pathloss_db(kind, LinkState::Nlos, d, 28.0);
            REQUIRE(los > prev_los);
            REQUIRE(nlos > prev_nlos);
            REQUIRE(nlos >= los);
            prev_los = los;
            prev_nlos = nlos;
        }
    }

    ChannelParams p;
    p.aerial.los = {40.0, 20.0, 20.0};
    CHECK(pathloss_db(LinkKind::Aerial, LinkState::Los, 100.0, 28.0, p) == Approx(80.0 + 20.0 * std::log10(28.0)));
    CHECK(pathloss_db(LinkKind::Terrestrial, LinkState::Los, 100.0, 28.0, p) ==
          Approx(pathloss_db(LinkKind::Terrestrial, LinkState::Los, 100.0, 28.0)));
}

namespace {

LinkGeometry link(Vec3 tx, Vec3 rx) { return make_link_geometry(tx, rx, Area{1000.0}); }

double angle_between(const Angles &a, const Angles &b)
{
    const Vec3 x = direction_from_angles(a), y = direction_from_angles(b);
    return std::atan2(x.cross(y).norm(), x.dot(y));
}

} // namespace

TEST_CASE("Channel - realization structure")
{
    const auto g = link({100, 100, 1.5}, {180, 160, 10});
    ChannelParams quiet;
    quiet.scattered_paths = 0;
    quiet.shadowing_los_db = 0.0;

    SECTION("forced LOS single path")
    {
        Rng rng(1);
        const auto r = sample_realization(g, LinkKind::Terrestrial, quiet, rng, LinkState::Los);
        REQUIRE(r.paths.size() == 1);
        CHECK(angle_between(r.paths[0].aod, g.los_departure()) < 1e-12);
        CHECK(angle_between(r.paths[0].aoa, g.los_arrival()) < 1e-12);
        CHECK(r.paths[0].loss_db == Approx(pathloss_db(LinkKind::Terrestrial, LinkState::Los, g.distance_3d(), 28.0)));
        // Arrival points back along the ray.
        CHECK((direction_from_angles(r.paths[0].aod) + direction_from_angles(r.paths[0].aoa)).norm() < 1e-12);
    }

    SECTION("shadowed single path")
    {
        ChannelParams p = quiet;
        p.shadowing_los_db = 4.0;
        double s = 0.0, s2 = 0.0;
        const int n = 4000;
        const double pl = pathloss_db(LinkKind::Terrestrial, LinkState::Los, g.distance_3d(), 28.0);
        for (int i = 0; i < n; ++i)
        {
            Rng rng(static_cast<std::uint64_t>(i));
            const double x = sample_realization(g, LinkKind::Terrestrial, p, rng, LinkState::Los).paths[0].loss_db - pl;
            s += x;
            s2 += x * x;
        }
        CHECK(std::abs(s / n) < 4.0 * 4.0 / std::sqrt(n));
        CHECK(std::sqrt(s2 / n) == Approx(4.0).epsilon(0.05));
    }

    SECTION("no randomness: losses bounded below by pathloss, LOS equal")
    {
        ChannelParams p = quiet;
        p.scattered_paths = 4;
        p.excess_loss_mean_db = 0.0;
        p.shadowing_nlos_db = 0.0;
        for (std::uint64_t s = 0; s < 200; ++s)
        {
            Rng rng(s);
            const auto r = sample_realization(g, LinkKind::Terrestrial, p, rng);
            const double pl = pathloss_db(LinkKind::Terrestrial, r.state, g.distance_3d(), 28.0);
            REQUIRE(r.paths.size() == (r.state == LinkState::Los ? 5u : 4u));
            for (const auto &path : r.paths)
                REQUIRE(path.loss_db == Approx(pl));
        }
    }

    SECTION("invariants over random links")
    {
        oracle::Gen gen(2);
        const ChannelParams p;
        for (int i = 0; i < 3000; ++i)
        {
            const Vec3 tx(gen.uniform(0, 1000), gen.uniform(0, 1000), 1.5);
            Vec3 rx(gen.uniform(0, 1000), gen.uniform(0, 1000), 10.0);
            const auto lg = link(tx, rx);
            if (lg.distance_3d() < 10.0)
                continue;
            Rng rng(static_cast<std::uint64_t>(i));
            const auto kind = i % 2 ? LinkKind::Aerial : LinkKind::Terrestrial;
            const auto r = sample_realization(lg, kind, p, rng);
            REQUIRE(r.state != LinkState::Outage);
            REQUIRE(r.paths.size() == (r.state == LinkState::Los ? 5u : 4u));
            if (r.state == LinkState::Los)
                REQUIRE(angle_between(r.paths[0].aod, lg.los_departure()) < 1e-12);
            const double floor_db = free_space_pathloss_db(lg.distance_3d(), 28.0) - 6.0;
            for (const auto &path : r.paths)
            {
                REQUIRE(path.loss_db >= floor_db);
                REQUIRE(path.phase_rad >= 0.0);
                REQUIRE(path.phase_rad < 2.0 * kPi);
                REQUIRE(path.aod.theta_deg >= 0.0);
                REQUIRE(path.aod.theta_deg <= 180.0);
                REQUIRE(path.aoa.phi_deg > -180.0);
                REQUIRE(path.aoa.phi_deg <= 180.0);
            }
        }
    }

    SECTION("outage")
    {
        ChannelParams p;
        p.aerial.outage_probability = 1.0;
        Rng rng(3);
        const auto r = sample_realization(g, LinkKind::Aerial, p, rng);
        CHECK(r.state == LinkState::Outage);
        CHECK(r.paths.empty());
        Rng rng2(3);
        CHECK(sample_realization(g, LinkKind::Terrestrial, p, rng2).state != LinkState::Outage);
        Rng rng3(3);
        CHECK_THROWS(sample_realization(g, LinkKind::Terrestrial, p, rng3, LinkState::Outage));
    }

    SECTION("keyed streams reproduce realizations")
    {
        Rng a = Rng::derive(5, Stream::Channel, {1, 2});
        Rng b = Rng::derive(5, Stream::Channel, {1, 2});
        const auto ra = sample_realization(g, LinkKind::Terrestrial, ChannelParams{}, a);
        const auto rb = sample_realization(g, LinkKind::Terrestrial, ChannelParams{}, b);
        REQUIRE(ra.paths.size() == rb.paths.size());
        for (std::size_t i = 0; i < ra.paths.size(); ++i)
        {
            CHECK(ra.paths[i].loss_db == rb.paths[i].loss_db);
            CHECK(ra.paths[i].phase_rad == rb.paths[i].phase_rad);
            CHECK(ra.paths[i].aod.phi_deg == rb.paths[i].aod.phi_deg);
        }
    }
}

namespace {

struct Ends
{
    UraGeometry tx_ura{4, 4, 0.5};
    UraGeometry rx_ura{8, 8, 0.5};
    ElementPattern tx_el{ParametricElementPattern{}};
    ElementPattern rx_el{ParametricElementPattern{}};
    ArrayEnd tx{&tx_ura, &tx_el, {30.0, 0.0}};
    ArrayEnd rx{&rx_ura, &rx_el, {200.0, -12.0}};
};

Eigen::VectorXcd local_steer(const UraGeometry &u, const Orientation &o, const Angles &global)
{
    const auto l = oracle::local_angles(o.azimuth_deg, o.tilt_deg, direction_from_angles(global));
    return oracle::steering(u.rows, u.cols, u.spacing_wavelengths, l.theta, l.phi);
}

double local_gain_db(const Orientation &o, const Angles &global)
{
    const auto l = oracle::local_angles(o.azimuth_deg, o.tilt_deg, direction_from_angles(global));
    return oracle::element_3gpp(l.theta, l.phi);
}

ChannelRealization random_realization(oracle::Gen &gen, int paths)
{
    ChannelRealization r;
    r.state = LinkState::Nlos;
    for (int m = 0; m < paths; ++m)
        r.paths.push_back({{gen.uniform(10, 170), gen.uniform(-180, 180)},
                           {gen.uniform(10, 170), gen.uniform(-180, 180)},
                           gen.uniform(90, 130),
                           gen.uniform(0, 2 * oracle::pi)});
    return r;
}

} // namespace

TEST_CASE("Channel - transmit covariance")
{
    Ends e;
    oracle::Gen gen(11);

    SECTION("single path is rank one along the steering vector")
    {
        const auto r = random_realization(gen, 1);
        const auto R = tx_covariance(r, e.tx);
        const auto ev = oracle::eigenvalues(R);
        CHECK(ev(ev.size() - 2) < 1e-12 * ev(ev.size() - 1));
        const Eigen::VectorXcd a = local_steer(e.tx_ura, e.tx.orientation, r.paths[0].aod);
        CHECK(oracle::line_angle(oracle::dominant_eigenvector(R), a) < 1e-6);
    }

    SECTION("trace identity and PSD")
    {
        for (int i = 0; i < 200; ++i)
        {
            const auto r = random_realization(gen, gen.integer(1, 6));
            const auto R = tx_covariance(r, e.tx);
            double expect = 0.0;
            for (const auto &p : r.paths)
                expect += db_to_linear(local_gain_db(e.tx.orientation, p.aod) - p.loss_db) * e.tx_ura.size();
            REQUIRE(R.trace().real() == Approx(expect).epsilon(1e-9));
            REQUIRE((R - R.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * R.cwiseAbs().maxCoeff());
            REQUIRE(oracle::eigenvalues(R)(0) >= -1e-10 * R.trace().real());
        }
    }

    SECTION("two equal orthogonal paths")
    {
        const UraGeometry pair{1, 2, 0.5};
        const TabulatedPattern flat({0, 180}, {-180, 180}, {0, 0, 0, 0});
        const ElementPattern iso(std::make_shared<const TabulatedPattern>(flat));
        const ArrayEnd tx{&pair, &iso, {0.0, 0.0}};
        ChannelRealization r;
        r.state = LinkState::Nlos;
        r.paths.push_back({{90, 0}, {90, 180}, 100.0, 0.0});
        r.paths.push_back({{90, 90}, {90, -90}, 100.0, 0.0});
        const auto ev = oracle::eigenvalues(tx_covariance(r, tx));
        CHECK(ev(0) == Approx(ev(1)).epsilon(1e-12));
        CHECK(ev(1) == Approx(2.0 * db_to_linear(-100.0)).epsilon(1e-12));
    }

    SECTION("outage rejected")
    {
        CHECK_THROWS_AS(tx_covariance(ChannelRealization{}, e.tx), std::invalid_argument);
    }
}

TEST_CASE("Channel - effective SIMO channel")
{
    Ends e;
    oracle::Gen gen(12);

    SECTION("single path, matched beam")
    {
        const auto r = random_realization(gen, 1);
        const auto &p = r.paths[0];
        const Eigen::VectorXcd a = local_steer(e.tx_ura, e.tx.orientation, p.aod);
        const Eigen::VectorXcd f = a / a.norm();
        const auto ch = effective_simo_channel(r, f, e.tx, e.rx);
        CHECK(ch.h.squaredNorm() == Approx(64.0).epsilon(1e-12));
        const double c = db_to_linear(local_gain_db(e.tx.orientation, p.aod) + local_gain_db(e.rx.orientation, p.aoa) -
                                      p.loss_db);
        CHECK(ch.gamma == Approx(c).epsilon(1e-12));
        CHECK(ch.beam_gain == Approx(16.0).epsilon(1e-9));
        CHECK(long_term_gain(r, f, e.tx, e.rx) == Approx(64.0 * 16.0 * c).epsilon(1e-9));
        // h is the receive steering vector up to a common phase.
        CHECK(oracle::line_angle(ch.h, local_steer(e.rx_ura, e.rx.orientation, p.aoa)) < 1e-6);
    }

    SECTION("multipath gamma and raw vector re-summation")
    {
        for (int i = 0; i < 100; ++i)
        {
            const auto r = random_realization(gen, gen.integer(1, 6));
            Eigen::VectorXcd f = gen.vector(16);
            f.normalize();
            const auto ch = effective_simo_channel(r, f, e.tx, e.rx);
            double gamma = 0.0;
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(64);
            for (const auto &p : r.paths)
            {
                const double c = db_to_linear(local_gain_db(e.tx.orientation, p.aod) +
                                              local_gain_db(e.rx.orientation, p.aoa) - p.loss_db);
                gamma += c;
                const oracle::cd proj = f.dot(local_steer(e.tx_ura, e.tx.orientation, p.aod));
                v += std::sqrt(c) * std::polar(1.0, p.phase_rad) * proj * local_steer(e.rx_ura, e.rx.orientation, p.aoa);
            }
            REQUIRE(ch.gamma == Approx(gamma).epsilon(1e-9));
            REQUIRE(ch.h.squaredNorm() == Approx(64.0).epsilon(1e-9));
            REQUIRE(ch.beam_gain == Approx(v.squaredNorm() / (64.0 * gamma)).epsilon(1e-9));
            REQUIRE((ch.h - v * std::sqrt(64.0 / v.squaredNorm())).cwiseAbs().maxCoeff() < 1e-9);
        }
    }

    SECTION("closed form without randomness")
    {
        ChannelParams p;
        p.scattered_paths = 0;
        p.shadowing_los_db = 0.0;
        const auto lg = make_link_geometry({100, 100, 1.5}, {160, 180, 10}, Area{1000.0});
        Rng rng(4);
        const auto r = sample_realization(lg, LinkKind::Terrestrial, p, rng, LinkState::Los);
        const Eigen::VectorXcd f = Eigen::VectorXcd::Ones(16) / 4.0;
        const auto ch = effective_simo_channel(r, f, e.tx, e.rx);
        const double expect = local_gain_db(e.tx.orientation, lg.los_departure()) +
                              local_gain_db(e.rx.orientation, lg.los_arrival()) -
                              pathloss_db(LinkKind::Terrestrial, LinkState::Los, lg.distance_3d(), 28.0);
        CHECK(ch.gamma == Approx(db_to_linear(expect)).epsilon(1e-9));
    }

    SECTION("beam orthogonal to every path")
    {
        const UraGeometry pair{1, 2, 0.5};
        const ElementPattern el{ParametricElementPattern{}};
        const ArrayEnd tx{&pair, &el, {0.0, 0.0}};
        ChannelRealization r;
        r.state = LinkState::Los;
        r.paths.push_back({{90, 0}, {90, 180}, 100.0, 0.0});
        Eigen::VectorXcd f(2);
        f << 1.0, -1.0;
        f.normalize();
        const auto ch = effective_simo_channel(r, f, tx, e.rx);
        CHECK(ch.beam_gain == 0.0);
        CHECK(ch.effective_gain() == 0.0);
        CHECK(ch.h.squaredNorm() == Approx(64.0));
    }
}

TEST_CASE("Channel - tabulated aerial LOS override")
{
    const auto path = std::filesystem::temp_directory_path() / "coexsim_los_table.csv";
    {
        std::ofstream f(path);
        f << "# test table\ndistance_m,probability\n0,1\n100,0.8\n300,0.2\n";
    }
    ChannelParams p;
    p.aerial.los_table = load_los_table(path);
    CHECK(los_probability(LinkKind::Aerial, 50.0, p) == Approx(0.9));
    CHECK(los_probability(LinkKind::Aerial, 200.0, p) == Approx(0.5));
    CHECK(los_probability(LinkKind::Aerial, 1000.0, p) == Approx(0.2));
    CHECK(los_probability(LinkKind::Terrestrial, 100.0, p) == Approx(los_probability(LinkKind::Terrestrial, 100.0)));
    {
        std::ofstream f(path);
        f << "d,p\n0,1\n";
    }
    CHECK_THROWS_AS(load_los_table(path), PatternError);
    CHECK_THROWS_AS(LosTable({0, 100}, {1.0, 1.5}), PatternError);
    CHECK_THROWS_AS(LosTable({100, 0}, {1.0, 0.5}), PatternError);
    std::filesystem::remove(path);
}
