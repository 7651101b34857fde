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

#include "coexsim/channel.hpp"

#include "coexsim/errors.hpp"
#include "coexsim/units.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace coexsim {

double PathlossLaw::evaluate(double d3d_m, double fc_ghz) const
{
    return intercept_db + distance_slope * std::log10(d3d_m) + frequency_slope * std::log10(fc_ghz);
}

LosTable::LosTable(std::vector<double> distance_m, std::vector<double> probability)
    : distance_(std::move(distance_m)), probability_(std::move(probability))
{
    if (distance_.empty() || distance_.size() != probability_.size())
        throw PatternError("LOS table needs matching, non-empty distance and probability columns");
    for (std::size_t i = 0; i < distance_.size(); ++i)
    {
        if (i > 0 && !(distance_[i] > distance_[i - 1]))
            throw PatternError("LOS table distances must be strictly increasing (row " + std::to_string(i) + ")");
        if (!(probability_[i] >= 0.0 && probability_[i] <= 1.0))
            throw PatternError("LOS table probability outside [0, 1] at row " + std::to_string(i));
    }
}

double LosTable::evaluate(double d2d_m) const
{
    if (d2d_m <= distance_.front())
        return probability_.front();
    if (d2d_m >= distance_.back())
        return probability_.back();
    const auto it = std::upper_bound(distance_.begin(), distance_.end(), d2d_m);
    const std::size_t hi = static_cast<std::size_t>(it - distance_.begin());
    const std::size_t lo = hi - 1;
    const double t = (d2d_m - distance_[lo]) / (distance_[hi] - distance_[lo]);
    return probability_[lo] + t * (probability_[hi] - probability_[lo]);
}

LosTable load_los_table(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw PatternError("cannot open LOS table " + path.string());
    std::vector<double> d, p;
    std::string line;
    bool header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        if (!header)
        {
            if (line != "distance_m,probability")
                throw PatternError(path.string() + ": expected header 'distance_m,probability'");
            header = true;
            continue;
        }
        std::istringstream ss(line);
        double dist = 0.0, prob = 0.0;
        char comma = 0;
        if (!(ss >> dist >> comma >> prob) || comma != ',')
            throw PatternError(path.string() + ":" + std::to_string(line_no) + ": malformed row");
        d.push_back(dist);
        p.push_back(prob);
    }
    return LosTable(std::move(d), std::move(p));
}

double los_probability(LinkKind kind, double d2d_m, const ChannelParams &params)
{
    if (kind == LinkKind::Terrestrial)
    {
        // 38.901 UMi street canyon
        if (d2d_m <= 18.0)
            return 1.0;
        return 18.0 / d2d_m + std::exp(-d2d_m / 36.0) * (1.0 - 18.0 / d2d_m);
    }
    const auto &aerial = params.aerial;
    if (aerial.los_table)
        return aerial.los_table->evaluate(d2d_m);
    return 1.0 / (1.0 + std::exp((d2d_m - aerial.los_midpoint_m) / aerial.los_scale_m));
}

double free_space_pathloss_db(double d3d_m, double fc_ghz)
{
    return 32.4 + 20.0 * std::log10(d3d_m) + 20.0 * std::log10(fc_ghz);
}

double pathloss_db(LinkKind kind, LinkState state, double d3d_m, double fc_ghz, const ChannelParams &params)
{
    if (state == LinkState::Outage)
        throw std::invalid_argument("pathloss_db: outage links have no pathloss");
    static constexpr PathlossLaw umi_los{32.4, 21.0, 20.0};
    static constexpr PathlossLaw umi_nlos{22.4, 35.3, 21.3};
    const PathlossLaw &los = kind == LinkKind::Terrestrial ? umi_los : params.aerial.los;
    const PathlossLaw &nlos = kind == LinkKind::Terrestrial ? umi_nlos : params.aerial.nlos;
    const double pl_los = los.evaluate(d3d_m, fc_ghz);
    if (state == LinkState::Los)
        return pl_los;
    return std::max(pl_los, nlos.evaluate(d3d_m, fc_ghz));
}

LinkGeometry make_link_geometry(const Vec3 &tx, const Vec3 &rx, const Area &area)
{
    return {tx, wrap_displacement(tx, rx, area)};
}

namespace {

double wrap_azimuth(double phi)
{
    phi = std::fmod(phi + 180.0, 360.0);
    if (phi <= 0.0)
        phi += 360.0;
    return phi - 180.0;
}

// Reflects zenith excursions back into [0, 180] (crossing a pole flips azimuth).
Angles perturb(const Angles &base, double d_theta, double d_phi)
{
    double theta = base.theta_deg + d_theta;
    double phi = base.phi_deg + d_phi;
    theta = std::fmod(theta, 360.0);
    if (theta < 0.0)
        theta += 360.0;
    if (theta > 180.0)
    {
        theta = 360.0 - theta;
        phi += 180.0;
    }
    return {theta, wrap_azimuth(phi)};
}

} // namespace

ChannelRealization sample_realization(const LinkGeometry &geometry, LinkKind kind, const ChannelParams &params,
                                      Rng &rng, std::optional<LinkState> forced_state)
{
    const double d2d = geometry.distance_2d();
    const double d3d = geometry.distance_3d();

    ChannelRealization out;
    if (forced_state)
    {
        out.state = *forced_state;
        if (out.state == LinkState::Outage && kind == LinkKind::Terrestrial)
            throw std::invalid_argument("terrestrial links cannot be in outage");
    }
    else
    {
        // Draw order is fixed: outage, then LOS.
        const double u_outage = rng.uniform();
        const double u_los = rng.uniform();
        if (kind == LinkKind::Aerial && u_outage < params.aerial.outage_probability)
            out.state = LinkState::Outage;
        else
            out.state = u_los < los_probability(kind, d2d, params) ? LinkState::Los : LinkState::Nlos;
    }
    if (out.state == LinkState::Outage)
        return out;

    const double sigma = out.state == LinkState::Los ? params.shadowing_los_db : params.shadowing_nlos_db;
    const double shadow = sigma > 0.0 ? rng.normal(0.0, sigma) : 0.0;
    const double pl = pathloss_db(kind, out.state, d3d, params.carrier_ghz, params);
    const double floor_db = free_space_pathloss_db(d3d, params.carrier_ghz) - 6.0;
    const Angles aod = geometry.los_departure();
    const Angles aoa = geometry.los_arrival();

    if (out.state == LinkState::Los)
    {
        Path p;
        p.aod = aod;
        p.aoa = aoa;
        p.loss_db = std::max(pl + shadow, floor_db);
        p.phase_rad = rng.uniform(0.0, 2.0 * kPi);
        out.paths.push_back(p);
    }
    for (int m = 0; m < params.scattered_paths; ++m)
    {
        Path p;
        p.aod = perturb(aod, rng.normal(0.0, params.elevation_spread_deg), rng.normal(0.0, params.azimuth_spread_deg));
        p.aoa = perturb(aoa, rng.normal(0.0, params.elevation_spread_deg), rng.normal(0.0, params.azimuth_spread_deg));
        const double excess = params.excess_loss_mean_db > 0.0 ? rng.exponential(params.excess_loss_mean_db) : 0.0;
        p.loss_db = std::max(pl + shadow + excess, floor_db);
        p.phase_rad = rng.uniform(0.0, 2.0 * kPi);
        out.paths.push_back(p);
    }
    return out;
}

namespace {

struct PathTerms
{
    Eigen::VectorXcd a_tx;
    double tx_gain_lin;
    double path_gain_lin;
};

PathTerms tx_terms(const Path &p, const ArrayEnd &tx)
{
    const Angles local = direction_in_local_frame(tx.orientation, direction_from_angles(p.aod));
    return {steering_vector(*tx.ura, local), db_to_linear(tx.pattern->gain_dbi(local)), db_to_linear(-p.loss_db)};
}

void require_paths(const ChannelRealization &r, const char *what)
{
    if (r.state == LinkState::Outage || r.paths.empty())
        throw std::invalid_argument(std::string(what) + ": realization is in outage");
}

} // namespace

Eigen::MatrixXcd tx_covariance(const ChannelRealization &realization, const ArrayEnd &tx)
{
    require_paths(realization, "tx_covariance");
    const int n = tx.ura->size();
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(n, n);
    for (const auto &p : realization.paths)
    {
        const auto t = tx_terms(p, tx);
        r.noalias() += (t.tx_gain_lin * t.path_gain_lin) * (t.a_tx * t.a_tx.adjoint());
    }
    return r;
}

EffectiveChannel effective_simo_channel(const ChannelRealization &realization, const Eigen::VectorXcd &f,
                                        const ArrayEnd &tx, const ArrayEnd &rx)
{
    require_paths(realization, "effective_simo_channel");
    const int n_rx = rx.ura->size();
    EffectiveChannel out;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n_rx);
    Eigen::VectorXcd first_arrival;
    for (const auto &p : realization.paths)
    {
        const auto t = tx_terms(p, tx);
        const Angles local_rx = direction_in_local_frame(rx.orientation, direction_from_angles(p.aoa));
        const double rx_gain_lin = db_to_linear(rx.pattern->gain_dbi(local_rx));
        const double c = t.tx_gain_lin * rx_gain_lin * t.path_gain_lin;
        out.gamma += c;
        Eigen::VectorXcd a_rx = steering_vector(*rx.ura, local_rx);
        const std::complex<double> coeff = std::sqrt(c) * std::polar(1.0, p.phase_rad) * f.dot(t.a_tx);
        v.noalias() += coeff * a_rx;
        if (first_arrival.size() == 0)
            first_arrival = std::move(a_rx);
    }
    const double v2 = v.squaredNorm();
    if (v2 > 0.0 && out.gamma > 0.0)
    {
        out.h = v * std::sqrt(n_rx / v2);
        out.beam_gain = v2 / (n_rx * out.gamma);
    }
    else
    {
        // The beam nulls every path: no power reaches the receiver. Keep a
        // well-formed direction so downstream linear algebra stays defined.
        out.h = first_arrival;
        out.beam_gain = 0.0;
    }
    return out;
}

double long_term_gain(const ChannelRealization &realization, const Eigen::VectorXcd &f, const ArrayEnd &tx,
                      const ArrayEnd &rx)
{
    if (realization.state == LinkState::Outage)
        return 0.0;
    double sum = 0.0;
    for (const auto &p : realization.paths)
    {
        const auto t = tx_terms(p, tx);
        const Angles local_rx = direction_in_local_frame(rx.orientation, direction_from_angles(p.aoa));
        const double rx_gain_lin = db_to_linear(rx.pattern->gain_dbi(local_rx));
        sum += t.tx_gain_lin * rx_gain_lin * t.path_gain_lin * std::norm(f.dot(t.a_tx));
    }
    return rx.ura->size() * sum;
}

} // namespace coexsim
