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

#include "coexsim/geometry.hpp"

#include "coexsim/errors.hpp"
#include "coexsim/units.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace coexsim {

namespace {

void check_area(const Area &area)
{
    if (!(area.side_m > 0.0) || !std::isfinite(area.side_m))
        throw ConfigError("area_side_m", "area side must be positive and finite");
}

double wrap_component(double d, double side)
{
    d = std::fmod(d, side);
    if (d > 0.5 * side)
        d -= side;
    else if (d < -0.5 * side)
        d += side;
    return d;
}

} // namespace

std::vector<BaseStation> deploy_base_stations(const Area &area, double isd_m, const TierParams &tier, Rng &rng,
                                              int first_id)
{
    check_area(area);
    if (std::isnan(isd_m) || !(isd_m > 0.0))
        throw ConfigError(tier.tier == Tier::Standard ? "isd_s_m" : "isd_d_m", "ISD must be positive");
    if (tier.height_max_m < tier.height_min_m)
        throw ConfigError("", "tier height range is inverted");

    std::vector<BaseStation> out;
    if (std::isinf(isd_m))
        return out;

    const double mean = area.size_m2() / (isd_m * isd_m);
    const auto count = rng.poisson(mean);
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i)
    {
        BaseStation bs;
        bs.id = first_id + static_cast<int>(i);
        bs.tier = tier.tier;
        const double x = rng.uniform(0.0, area.side_m);
        const double y = rng.uniform(0.0, area.side_m);
        bs.height_m = tier.height_max_m > tier.height_min_m ? rng.uniform(tier.height_min_m, tier.height_max_m)
                                                            : tier.height_min_m;
        bs.position = Vec3(x, y, bs.height_m);
        const double offset = rng.uniform(0.0, 360.0);
        for (int s = 0; s < 3; ++s)
        {
            double az = offset + 120.0 * s;
            if (az >= 360.0)
                az -= 360.0;
            bs.sectors[s].orientation = {az, tier.tilt_deg};
        }
        out.push_back(bs);
    }
    return out;
}

std::size_t count_standard_cells(std::span<const BaseStation> base_stations)
{
    std::size_t n = 0;
    for (const auto &bs : base_stations)
        if (bs.tier == Tier::Standard)
            n += bs.sectors.size();
    return n;
}

std::vector<UserNode> deploy_users(const Area &area, std::span<const BaseStation> base_stations,
                                   const UserPopulation &population, const UserPlacement &placement, Rng &rng)
{
    check_area(area);
    if (!(population.ues_per_cell >= 0.0) || !(population.uavs_per_cell >= 0.0))
        throw ConfigError("users_per_cell", "per-cell user counts must be non-negative");

    const double cells = static_cast<double>(count_standard_cells(base_stations));
    const auto n_ue = static_cast<std::size_t>(std::llround(cells * population.ues_per_cell));
    const auto n_uav = static_cast<std::size_t>(std::llround(cells * population.uavs_per_cell));

    std::vector<UserNode> users;
    users.reserve(n_ue + n_uav);
    for (std::size_t i = 0; i < n_ue + n_uav; ++i)
    {
        // One parent draw per user: a user's position never depends on how many
        // retries other users needed.
        Rng local(rng.next());
        UserNode user;
        user.id = static_cast<int>(i);
        user.kind = i < n_ue ? UserKind::Ue : UserKind::Uav;
        const bool uav = user.kind == UserKind::Uav;
        const double height = uav ? placement.uav_height_m : placement.ue_height_m;

        bool placed = false;
        for (int attempt = 0; attempt < placement.max_retries && !placed; ++attempt)
        {
            const Vec3 candidate(local.uniform(0.0, area.side_m), local.uniform(0.0, area.side_m), height);
            placed = true;
            for (const auto &bs : base_stations)
            {
                const Vec3 d = wrap_displacement(candidate, bs.position, area);
                const double dist = uav ? d.norm() : std::hypot(d.x(), d.y());
                const double limit = uav ? placement.uav_min_3d_m : placement.ue_min_2d_m;
                if (dist < limit)
                {
                    placed = false;
                    break;
                }
            }
            if (placed)
                user.position = candidate;
        }
        if (!placed)
            throw DeploymentError("user " + std::to_string(i) + " violates the minimum BS distance after " +
                                  std::to_string(placement.max_retries) + " retries");

        user.orientation.azimuth_deg = local.uniform(0.0, 360.0);
        user.orientation.tilt_deg = uav ? placement.uav_tilt_deg : 0.0;
        users.push_back(user);
    }
    return users;
}

Vec3 wrap_displacement(const Vec3 &a, const Vec3 &b, const Area &area)
{
    return {wrap_component(b.x() - a.x(), area.side_m), wrap_component(b.y() - a.y(), area.side_m), b.z() - a.z()};
}

Vec3 direction_from_angles(const Angles &angles)
{
    const double th = angles.theta_deg * kDegToRad;
    const double ph = angles.phi_deg * kDegToRad;
    return {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
}

Angles angles_from_direction(const Vec3 &direction)
{
    const Vec3 u = direction.normalized();
    const double z = std::clamp(u.z(), -1.0, 1.0);
    Angles a;
    a.theta_deg = std::acos(z) * kRadToDeg;
    a.phi_deg = std::atan2(u.y(), u.x()) * kRadToDeg;
    if (a.phi_deg <= -180.0)
        a.phi_deg += 360.0;
    return a;
}

Eigen::Matrix3d local_to_global(const Orientation &orientation)
{
    const double a = orientation.azimuth_deg * kDegToRad;
    // A positive (upward) tilt is a rotation by -tilt about the local y axis.
    const double b = -orientation.tilt_deg * kDegToRad;
    Eigen::Matrix3d rz;
    rz << std::cos(a), -std::sin(a), 0.0, std::sin(a), std::cos(a), 0.0, 0.0, 0.0, 1.0;
    Eigen::Matrix3d ry;
    ry << std::cos(b), 0.0, std::sin(b), 0.0, 1.0, 0.0, -std::sin(b), 0.0, std::cos(b);
    return rz * ry;
}

Angles direction_in_local_frame(const Orientation &orientation, const Vec3 &global_direction)
{
    return angles_from_direction(local_to_global(orientation).transpose() * global_direction);
}

Vec3 direction_to_global(const Orientation &orientation, const Angles &local)
{
    return local_to_global(orientation) * direction_from_angles(local);
}

} // namespace coexsim
