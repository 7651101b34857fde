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

#include "coexsim/geometry.hpp"

#include <Eigen/Core>

#include <complex>
#include <filesystem>
#include <istream>
#include <memory>
#include <variant>
#include <vector>

namespace coexsim {

// 3GPP sectorized element: parabolic vertical and horizontal cuts, each
// clipped, with the combined attenuation clipped at a_m.
struct ParametricElementPattern
{
    double theta_3db_deg = 65.0;
    double phi_3db_deg = 65.0;
    double sla_v_db = 30.0;
    double a_m_db = 30.0;
    double g_max_dbi = 8.0;

    double gain_dbi(const Angles &local) const;
};

// Gain table on a (theta, phi) grid covering the full sphere, queried by
// bilinear interpolation. Immutable once built.
class TabulatedPattern
{
public:
    // Validates the grids and values; throws PatternError on malformed input.
    TabulatedPattern(std::vector<double> theta_grid_deg, std::vector<double> phi_grid_deg,
                     std::vector<double> gain_dbi_row_major);

    double gain_dbi(const Angles &local) const;

    const std::vector<double> &theta_grid() const { return theta_; }
    const std::vector<double> &phi_grid() const { return phi_; }
    double at(std::size_t theta_index, std::size_t phi_index) const { return gain_[theta_index * phi_.size() + phi_index]; }
    double max_gain_dbi() const;

private:
    std::vector<double> theta_;
    std::vector<double> phi_;
    std::vector<double> gain_;
};

// CSV layout: optional '#' comment lines, one header row whose first cell is a
// label and whose remaining cells are the phi grid, then one row per theta
// node (theta first, then gains in dBi).
TabulatedPattern parse_pattern(std::istream &in, const std::string &source_name = "<stream>");
TabulatedPattern load_pattern(const std::filesystem::path &path);

// The synthetic UAV pattern compiled into the library.
std::shared_ptr<const TabulatedPattern> bundled_uav_pattern();

class ElementPattern
{
public:
    ElementPattern() = default;
    ElementPattern(ParametricElementPattern p) : impl_(p) {}
    ElementPattern(std::shared_ptr<const TabulatedPattern> p) : impl_(std::move(p)) {}

    double gain_dbi(const Angles &local) const;
    // Gain along the local boresight (theta = 90, phi = 0).
    double boresight_gain_dbi() const { return gain_dbi(Angles{90.0, 0.0}); }

private:
    std::variant<ParametricElementPattern, std::shared_ptr<const TabulatedPattern>> impl_;
};

// Planar array in the local y-z plane, broadside along local x.
struct UraGeometry
{
    int rows = 8;  // along local z
    int cols = 8;  // along local y
    double spacing_wavelengths = 0.5;

    int size() const { return rows * cols; }
};

// Entry (r, c), flattened row-major, is exp(j 2 pi d (c u + r v)) with
// u = sin(theta) sin(phi) and v = cos(theta) in local coordinates.
Eigen::VectorXcd steering_vector(const UraGeometry &ura, const Angles &local);

} // namespace coexsim
