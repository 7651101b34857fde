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

#pragma once

#include "coexsim/antenna.hpp"
#include "coexsim/geometry.hpp"
#include "coexsim/random.hpp"

#include <Eigen/Core>

#include <filesystem>
#include <optional>
#include <vector>

namespace coexsim {

enum class LinkKind
{
    Terrestrial,
    Aerial,
};

enum class LinkState
{
    Los,
    Nlos,
    Outage,
};

// Pathloss law PL = intercept + distance_slope log10(d3d) + frequency_slope log10(fc).
struct PathlossLaw
{
    double intercept_db;
    double distance_slope;
    double frequency_slope;

    double evaluate(double d3d_m, double fc_ghz) const;
};

// Distance -> LOS probability, linearly interpolated and clamped at the ends.
class LosTable
{
public:
    LosTable(std::vector<double> distance_m, std::vector<double> probability);

    double evaluate(double d2d_m) const;

    const std::vector<double> &distances() const { return distance_; }

private:
    std::vector<double> distance_;
    std::vector<double> probability_;
};

// CSV with a `distance_m,probability` header.
LosTable load_los_table(const std::filesystem::path &path);

// Parametric stand-in for the data-driven aerial model: logistic LOS curve in
// the horizontal distance, UMi-form pathloss with overridable coefficients, and
// an optional outage state.
struct AerialSurrogate
{
    double los_midpoint_m = 200.0;
    double los_scale_m = 40.0;
    double outage_probability = 0.0;
    PathlossLaw los{32.4, 21.0, 20.0};
    PathlossLaw nlos{22.4, 35.3, 21.3};
    std::optional<LosTable> los_table;
};

struct ChannelParams
{
    double carrier_ghz = 28.0;
    int scattered_paths = 4;
    double azimuth_spread_deg = 30.0;
    double elevation_spread_deg = 10.0;
    double excess_loss_mean_db = 6.0;
    double shadowing_los_db = 4.0;
    double shadowing_nlos_db = 7.8;
    AerialSurrogate aerial;
};

double los_probability(LinkKind kind, double d2d_m, const ChannelParams &params = {});

// Outage has no pathloss; requesting it throws std::invalid_argument.
double pathloss_db(LinkKind kind, LinkState state, double d3d_m, double fc_ghz, const ChannelParams &params = {});

double free_space_pathloss_db(double d3d_m, double fc_ghz);

// One propagation path, angles in the global frame.
struct Path
{
    Angles aod;  // departure direction at the transmitter
    Angles aoa;  // arrival direction at the receiver (pointing back along the path)
    double loss_db = 0.0;
    double phase_rad = 0.0;
};

struct ChannelRealization
{
    LinkState state = LinkState::Outage;
    std::vector<Path> paths;
};

// Transmitter position and the wrapped displacement towards the receiver.
struct LinkGeometry
{
    Vec3 tx_position = Vec3::Zero();
    Vec3 displacement = Vec3::Zero();

    double distance_2d() const { return std::hypot(displacement.x(), displacement.y()); }
    double distance_3d() const { return displacement.norm(); }
    Angles los_departure() const { return angles_from_direction(displacement); }
    Angles los_arrival() const { return angles_from_direction(-displacement); }
};

LinkGeometry make_link_geometry(const Vec3 &tx, const Vec3 &rx, const Area &area);

// Draws the link state and the reduced cluster realization. `forced_state`
// skips the state draw (used by tests and calibration).
ChannelRealization sample_realization(const LinkGeometry &geometry, LinkKind kind, const ChannelParams &params,
                                      Rng &rng, std::optional<LinkState> forced_state = std::nullopt);

// Array, element and mounting of one link end.
struct ArrayEnd
{
    const UraGeometry *ura = nullptr;
    const ElementPattern *pattern = nullptr;
    Orientation orientation;
};

// R = sum_m A_tx(m) L_m^-1 a_tx(m) a_tx(m)^H. Throws std::invalid_argument for outage.
Eigen::MatrixXcd tx_covariance(const ChannelRealization &realization, const ArrayEnd &tx);

struct EffectiveChannel
{
    Eigen::VectorXcd h;      // normalized, |h|^2 = N_rx
    double gamma = 0.0;      // sum_m A_tx A_rx L^-1
    double beam_gain = 0.0;  // |v|^2 / (N_rx gamma), transmit beamforming factor

    // Large-scale gain that multiplies p_tx |w^H h|^2 in the link budget.
    double effective_gain() const { return gamma * beam_gain; }
};

// Effective SIMO channel after transmit beamforming with unit-norm `f`.
EffectiveChannel effective_simo_channel(const ChannelRealization &realization, const Eigen::VectorXcd &f,
                                        const ArrayEnd &tx, const ArrayEnd &rx);

// Phase-averaged received array power N_rx sum_m A_tx A_rx L^-1 |f^H a_tx(m)|^2.
double long_term_gain(const ChannelRealization &realization, const Eigen::VectorXcd &f, const ArrayEnd &tx,
                      const ArrayEnd &rx);

} // namespace coexsim
