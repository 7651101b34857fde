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

#include "coexsim/antenna.hpp"

#include "coexsim/errors.hpp"
#include "coexsim/units.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

namespace coexsim {

namespace detail {
std::string_view bundled_uav_pattern_csv();
}

double ParametricElementPattern::gain_dbi(const Angles &local) const
{
    const double tv = (local.theta_deg - 90.0) / theta_3db_deg;
    const double th = local.phi_deg / phi_3db_deg;
    const double vertical = std::min(12.0 * tv * tv, sla_v_db);
    const double horizontal = std::min(12.0 * th * th, a_m_db);
    return g_max_dbi - std::min(vertical + horizontal, a_m_db);
}

TabulatedPattern::TabulatedPattern(std::vector<double> theta_grid_deg, std::vector<double> phi_grid_deg,
                                   std::vector<double> gain_dbi_row_major)
    : theta_(std::move(theta_grid_deg)), phi_(std::move(phi_grid_deg)), gain_(std::move(gain_dbi_row_major))
{
    constexpr double eps = 1e-9;
    if (theta_.size() < 2 || phi_.size() < 2)
        throw PatternError("pattern needs at least two theta and two phi nodes");
    for (std::size_t i = 1; i < theta_.size(); ++i)
        if (!(theta_[i] > theta_[i - 1]))
            throw PatternError("theta grid is not strictly increasing at index " + std::to_string(i));
    for (std::size_t i = 1; i < phi_.size(); ++i)
        if (!(phi_[i] > phi_[i - 1]))
            throw PatternError("phi grid is not strictly increasing at index " + std::to_string(i));
    if (std::abs(theta_.front()) > eps || std::abs(theta_.back() - 180.0) > eps)
        throw PatternError("theta grid must span 0 to 180 degrees");
    if (std::abs(phi_.front() + 180.0) > eps || std::abs(phi_.back() - 180.0) > eps)
        throw PatternError("phi grid must span -180 to 180 degrees");
    if (gain_.size() != theta_.size() * phi_.size())
        throw PatternError("gain table has " + std::to_string(gain_.size()) + " entries, expected " +
                           std::to_string(theta_.size() * phi_.size()));
    for (std::size_t r = 0; r < theta_.size(); ++r)
        for (std::size_t c = 0; c < phi_.size(); ++c)
            if (!std::isfinite(gain_[r * phi_.size() + c]))
                throw PatternError("non-finite gain at row " + std::to_string(r) + ", column " + std::to_string(c));
}

double TabulatedPattern::max_gain_dbi() const
{
    return *std::max_element(gain_.begin(), gain_.end());
}

double TabulatedPattern::gain_dbi(const Angles &local) const
{
    const double theta = std::clamp(local.theta_deg, 0.0, 180.0);
    // Both grid edges are honoured as given; only values outside them wrap.
    double phi = local.phi_deg;
    if (phi < -180.0 || phi > 180.0)
    {
        phi = std::fmod(phi + 180.0, 360.0);
        if (phi < 0.0)
            phi += 360.0;
        phi -= 180.0;
    }

    auto bracket = [](const std::vector<double> &grid, double x) {
        auto it = std::upper_bound(grid.begin(), grid.end(), x);
        std::size_t hi = static_cast<std::size_t>(std::distance(grid.begin(), it));
        hi = std::clamp<std::size_t>(hi, 1, grid.size() - 1);
        const std::size_t lo = hi - 1;
        const double t = std::clamp((x - grid[lo]) / (grid[hi] - grid[lo]), 0.0, 1.0);
        return std::pair{lo, t};
    };
    const auto [r, tr] = bracket(theta_, theta);
    const auto [c, tc] = bracket(phi_, phi);
    const double g00 = at(r, c), g01 = at(r, c + 1), g10 = at(r + 1, c), g11 = at(r + 1, c + 1);
    return (1.0 - tr) * ((1.0 - tc) * g00 + tc * g01) + tr * ((1.0 - tc) * g10 + tc * g11);
}

namespace {

std::vector<std::string> split_csv(const std::string &line)
{
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ','))
        cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
        cells.emplace_back();
    return cells;
}

double parse_cell(const std::string &text, const std::string &where)
{
    std::string t = text;
    t.erase(0, t.find_first_not_of(" \t\r"));
    t.erase(t.find_last_not_of(" \t\r") + 1);
    if (t.empty())
        throw PatternError(where + ": empty cell");
    std::size_t used = 0;
    double v;
    try
    {
        v = std::stod(t, &used);
    }
    catch (const std::exception &)
    {
        throw PatternError(where + ": cannot parse '" + t + "'");
    }
    if (used != t.size())
        throw PatternError(where + ": trailing characters in '" + t + "'");
    return v;
}

} // namespace

TabulatedPattern parse_pattern(std::istream &in, const std::string &source_name)
{
    std::string line;
    std::vector<double> phi;
    std::vector<double> theta;
    std::vector<double> gains;
    bool have_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#')
            continue;
        const auto cells = split_csv(line);
        const std::string where = source_name + ":" + std::to_string(line_no);
        if (!have_header)
        {
            if (cells.size() < 3)
                throw PatternError(where + ": header must list at least two phi nodes");
            for (std::size_t c = 1; c < cells.size(); ++c)
                phi.push_back(parse_cell(cells[c], where + " column " + std::to_string(c)));
            have_header = true;
            continue;
        }
        if (cells.size() != phi.size() + 1)
            throw PatternError(where + ": expected " + std::to_string(phi.size() + 1) + " cells, found " +
                               std::to_string(cells.size()));
        const std::size_t row = theta.size();
        theta.push_back(parse_cell(cells[0], where + " theta"));
        for (std::size_t c = 1; c < cells.size(); ++c)
        {
            const double g = parse_cell(cells[c], where + " column " + std::to_string(c));
            if (!std::isfinite(g))
                throw PatternError(source_name + ": non-finite gain at row " + std::to_string(row) + ", column " +
                                   std::to_string(c - 1));
            gains.push_back(g);
        }
    }
    if (!have_header)
        throw PatternError(source_name + ": empty pattern file");
    try
    {
        return TabulatedPattern(std::move(theta), std::move(phi), std::move(gains));
    }
    catch (const PatternError &e)
    {
        throw PatternError(source_name + ": " + e.what());
    }
}

TabulatedPattern load_pattern(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw PatternError("cannot open pattern file " + path.string());
    return parse_pattern(in, path.string());
}

std::shared_ptr<const TabulatedPattern> bundled_uav_pattern()
{
    static const std::shared_ptr<const TabulatedPattern> pattern = [] {
        std::istringstream in{std::string(detail::bundled_uav_pattern_csv())};
        return std::make_shared<const TabulatedPattern>(parse_pattern(in, "<bundled uav pattern>"));
    }();
    return pattern;
}

double ElementPattern::gain_dbi(const Angles &local) const
{
    if (const auto *p = std::get_if<ParametricElementPattern>(&impl_))
        return p->gain_dbi(local);
    return std::get<std::shared_ptr<const TabulatedPattern>>(impl_)->gain_dbi(local);
}

Eigen::VectorXcd steering_vector(const UraGeometry &ura, const Angles &local)
{
    const double th = local.theta_deg * kDegToRad;
    const double ph = local.phi_deg * kDegToRad;
    const double u = std::sin(th) * std::sin(ph);
    const double v = std::cos(th);
    const double k = 2.0 * kPi * ura.spacing_wavelengths;
    Eigen::VectorXcd a(ura.size());
    for (int r = 0; r < ura.rows; ++r)
        for (int c = 0; c < ura.cols; ++c)
            a(r * ura.cols + c) = std::polar(1.0, k * (c * u + r * v));
    return a;
}

} // namespace coexsim
