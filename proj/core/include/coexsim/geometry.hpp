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

#include "coexsim/random.hpp"

#include <Eigen/Core>

#include <array>
#include <span>
#include <vector>

namespace coexsim {

using Vec3 = Eigen::Vector3d;

// Square simulation area with toroidal wrap-around on the horizontal plane.
struct Area
{
    double side_m = 1000.0;

    double size_m2() const { return side_m * side_m; }
};

enum class Tier
{
    Standard,
    Dedicated,
};

// Array mounting: azimuth of the boresight and signed elevation tilt
// (positive = up), both in degrees.
struct Orientation
{
    double azimuth_deg = 0.0;
    double tilt_deg = 0.0;
};

struct Sector
{
    Orientation orientation;
};

struct BaseStation
{
    int id = 0;
    Vec3 position = Vec3::Zero();
    Tier tier = Tier::Standard;
    double height_m = 10.0;
    std::array<Sector, 3> sectors;
};

enum class UserKind
{
    Ue,
    Uav,
};

struct UserNode
{
    int id = 0;
    UserKind kind = UserKind::Ue;
    Vec3 position = Vec3::Zero();
    Orientation orientation;
};

// Per-tier deployment parameters. Standard sites use a fixed height
// (min == max); dedicated rooftop sites draw heights uniformly.
struct TierParams
{
    Tier tier = Tier::Standard;
    double height_min_m = 10.0;
    double height_max_m = 10.0;
    double tilt_deg = -12.0;

    static TierParams standard() { return {Tier::Standard, 10.0, 10.0, -12.0}; }
    static TierParams dedicated() { return {Tier::Dedicated, 10.0, 30.0, 45.0}; }
};

// Draws a homogeneous PPP with density 1/isd^2 over the area. An infinite ISD
// yields an empty tier. Ids are assigned consecutively from `first_id`.
std::vector<BaseStation> deploy_base_stations(const Area &area, double isd_m, const TierParams &tier, Rng &rng,
                                              int first_id = 0);

struct UserPlacement
{
    double ue_min_2d_m = 10.0;
    double uav_min_3d_m = 10.0;
    double ue_height_m = 1.5;
    double uav_height_m = 120.0;
    double uav_tilt_deg = -90.0;
    int max_retries = 1000;
};

// Average user counts per standard cell. Totals are rounded products with the
// number of standard cells, so the population does not depend on how many
// dedicated sites exist.
struct UserPopulation
{
    double ues_per_cell = 5.0;
    double uavs_per_cell = 5.0;
};

std::size_t count_standard_cells(std::span<const BaseStation> base_stations);

// Places UEs (ids first) and then UAVs uniformly over the area, resampling each
// user until its minimum-distance constraint towards every base station holds.
// Throws DeploymentError once a user exhausts `placement.max_retries`.
std::vector<UserNode> deploy_users(const Area &area, std::span<const BaseStation> base_stations,
                                   const UserPopulation &population, const UserPlacement &placement, Rng &rng);

// Minimum-image displacement b - a; only the horizontal components wrap.
Vec3 wrap_displacement(const Vec3 &a, const Vec3 &b, const Area &area);

// Zenith/azimuth pair in degrees. theta in [0, 180], phi in (-180, 180].
struct Angles
{
    double theta_deg = 90.0;
    double phi_deg = 0.0;
};

Vec3 direction_from_angles(const Angles &angles);
Angles angles_from_direction(const Vec3 &direction);

// Rotation taking antenna-local coordinates (x = boresight, z = local zenith)
// to global ones: azimuth about the vertical, then tilt about the rotated
// horizontal axis.
Eigen::Matrix3d local_to_global(const Orientation &orientation);

Angles direction_in_local_frame(const Orientation &orientation, const Vec3 &global_direction);
Vec3 direction_to_global(const Orientation &orientation, const Angles &local);

} // namespace coexsim
