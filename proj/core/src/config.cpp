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

#include "coexsim/config.hpp"

#include "coexsim/errors.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace coexsim {

namespace {

struct FieldSpec
{
    std::string name;
    std::function<std::string(const ScenarioConfig &)> get;
    std::function<void(ScenarioConfig &, const std::string &)> set;
};

std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string &key, const std::string &text)
{
    const std::string t = trim(text);
    if (t == "inf" || t == "+inf" || t == "infinity")
        return std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto *first = t.data();
    const auto *last = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (t.empty() || ec != std::errc() || ptr != last || std::isnan(v))
        throw ConfigError(key, "expected a number, got '" + t + "'");
    return v;
}

template <typename Int>
Int parse_int(const std::string &key, const std::string &text)
{
    const std::string t = trim(text);
    Int v{};
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        throw ConfigError(key, "expected an integer, got '" + t + "'");
    return v;
}

bool parse_bool(const std::string &key, const std::string &text)
{
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes")
        return true;
    if (t == "false" || t == "0" || t == "no")
        return false;
    throw ConfigError(key, "expected true/false, got '" + t + "'");
}

PowerControlMode parse_pc(const std::string &key, const std::string &text)
{
    const std::string t = trim(text);
    if (t == "open_loop")
        return PowerControlMode::OpenLoop;
    if (t == "max_power" || t == "max")
        return PowerControlMode::MaxPower;
    if (t == "off")
        return PowerControlMode::Off;
    throw ConfigError(key, "expected open_loop, max_power or off, got '" + t + "'");
}

AccessPolicy parse_mode(const std::string &key, const std::string &text)
{
    const std::string t = trim(text);
    if (t == "single")
        return AccessPolicy::SingleMno;
    if (t == "closed")
        return AccessPolicy::ClosedAccess;
    if (t == "open")
        return AccessPolicy::OpenAccess;
    throw ConfigError(key, "expected single, closed or open, got '" + t + "'");
}

template <typename T>
FieldSpec field(std::string name, T ScenarioConfig::*member)
{
    FieldSpec f;
    f.name = name;
    if constexpr (std::is_same_v<T, double>)
    {
        f.get = [member](const ScenarioConfig &c) { return format_double(c.*member); };
        f.set = [member, name](ScenarioConfig &c, const std::string &v) { c.*member = parse_double(name, v); };
    }
    else if constexpr (std::is_same_v<T, bool>)
    {
        f.get = [member](const ScenarioConfig &c) { return std::string(c.*member ? "true" : "false"); };
        f.set = [member, name](ScenarioConfig &c, const std::string &v) { c.*member = parse_bool(name, v); };
    }
    else if constexpr (std::is_integral_v<T>)
    {
        f.get = [member](const ScenarioConfig &c) { return std::to_string(c.*member); };
        f.set = [member, name](ScenarioConfig &c, const std::string &v) { c.*member = parse_int<T>(name, v); };
    }
    else if constexpr (std::is_same_v<T, std::string>)
    {
        f.get = [member](const ScenarioConfig &c) { return c.*member; };
        f.set = [member](ScenarioConfig &c, const std::string &v) { c.*member = trim(v); };
    }
    else if constexpr (std::is_same_v<T, PowerControlMode>)
    {
        f.get = [member](const ScenarioConfig &c) { return to_string(c.*member); };
        f.set = [member, name](ScenarioConfig &c, const std::string &v) { c.*member = parse_pc(name, v); };
    }
    else if constexpr (std::is_same_v<T, AccessPolicy>)
    {
        f.get = [member](const ScenarioConfig &c) { return to_string(c.*member); };
        f.set = [member, name](ScenarioConfig &c, const std::string &v) { c.*member = parse_mode(name, v); };
    }
    return f;
}

const std::vector<FieldSpec> &fields()
{
    using C = ScenarioConfig;
    static const std::vector<FieldSpec> specs = {
        field("area_side_m", &C::area_side_m),
        field("min_ue_bs_2d_m", &C::min_ue_bs_2d_m),
        field("min_uav_bs_3d_m", &C::min_uav_bs_3d_m),
        field("isd_s_m", &C::isd_s_m),
        field("isd_d_m", &C::isd_d_m),
        field("bs_height_standard_m", &C::bs_height_standard_m),
        field("bs_height_dedicated_min_m", &C::bs_height_dedicated_min_m),
        field("bs_height_dedicated_max_m", &C::bs_height_dedicated_max_m),
        field("tilt_standard_deg", &C::tilt_standard_deg),
        field("tilt_dedicated_deg", &C::tilt_dedicated_deg),
        field("cosite_dedicated", &C::cosite_dedicated),
        field("ue_height_m", &C::ue_height_m),
        field("uav_height_m", &C::uav_height_m),
        field("uav_array_tilt_deg", &C::uav_array_tilt_deg),
        field("max_retries", &C::max_retries),
        field("bandwidth_mhz", &C::bandwidth_mhz),
        field("carrier_ghz", &C::carrier_ghz),
        field("noise_figure_db", &C::noise_figure_db),
        field("noise_psd_dbm_hz", &C::noise_psd_dbm_hz),
        field("pmax_dbm", &C::pmax_dbm),
        field("p0_dbm", &C::p0_dbm),
        field("alpha", &C::alpha),
        field("ue_power_control", &C::ue_power_control),
        field("uav_power_control", &C::uav_power_control),
        field("theta_3db_deg", &C::theta_3db_deg),
        field("phi_3db_deg", &C::phi_3db_deg),
        field("sla_v_db", &C::sla_v_db),
        field("a_m_db", &C::a_m_db),
        field("g_max_dbi", &C::g_max_dbi),
        field("bs_rows", &C::bs_rows),
        field("bs_cols", &C::bs_cols),
        field("user_rows", &C::user_rows),
        field("user_cols", &C::user_cols),
        field("element_spacing", &C::element_spacing),
        field("uav_pattern", &C::uav_pattern),
        field("users_per_cell", &C::users_per_cell),
        field("uav_fraction", &C::uav_fraction),
        field("uav_config", &C::uav_config),
        field("mode", &C::mode),
        field("n_u", &C::n_u),
        field("drops", &C::drops),
        field("slots", &C::slots),
        field("seed", &C::seed),
        field("extend_slots", &C::extend_slots),
        field("outage_sinr_db", &C::outage_sinr_db),
        field("scattered_paths", &C::scattered_paths),
        field("azimuth_spread_deg", &C::azimuth_spread_deg),
        field("elevation_spread_deg", &C::elevation_spread_deg),
        field("excess_loss_mean_db", &C::excess_loss_mean_db),
        field("shadowing_los_db", &C::shadowing_los_db),
        field("shadowing_nlos_db", &C::shadowing_nlos_db),
        field("aerial_los_midpoint_m", &C::aerial_los_midpoint_m),
        field("aerial_los_scale_m", &C::aerial_los_scale_m),
        field("aerial_outage_probability", &C::aerial_outage_probability),
        field("aerial_los_table", &C::aerial_los_table),
        field("aerial_pl_los_intercept_db", &C::aerial_pl_los_intercept_db),
        field("aerial_pl_los_distance_slope", &C::aerial_pl_los_distance_slope),
        field("aerial_pl_los_frequency_slope", &C::aerial_pl_los_frequency_slope),
        field("aerial_pl_nlos_intercept_db", &C::aerial_pl_nlos_intercept_db),
        field("aerial_pl_nlos_distance_slope", &C::aerial_pl_nlos_distance_slope),
        field("aerial_pl_nlos_frequency_slope", &C::aerial_pl_nlos_frequency_slope),
    };
    return specs;
}

const FieldSpec &find_field(const std::string &key)
{
    // Short aliases used on the command line.
    static const std::map<std::string, std::string> aliases = {
        {"isd_d", "isd_d_m"}, {"isd_s", "isd_s_m"}, {"area", "area_side_m"}, {"p0", "p0_dbm"},
        {"pmax", "pmax_dbm"}, {"config", "uav_config"}};
    std::string name = trim(key);
    if (auto it = aliases.find(name); it != aliases.end())
        name = it->second;
    for (const auto &f : fields())
        if (f.name == name)
            return f;
    throw ConfigError(name, "unknown configuration key");
}

} // namespace

std::string format_double(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string to_string(PowerControlMode mode)
{
    switch (mode)
    {
    case PowerControlMode::OpenLoop:
        return "open_loop";
    case PowerControlMode::MaxPower:
        return "max_power";
    case PowerControlMode::Off:
        return "off";
    }
    return "?";
}

std::string to_string(AccessPolicy mode)
{
    switch (mode)
    {
    case AccessPolicy::SingleMno:
        return "single";
    case AccessPolicy::ClosedAccess:
        return "closed";
    case AccessPolicy::OpenAccess:
        return "open";
    }
    return "?";
}

ScenarioConfig ScenarioConfig::resolved() const
{
    ScenarioConfig c = *this;
    switch (uav_config)
    {
    case 1:
        c.uav_fraction = 0.0;
        break;
    case 2:
        c.uav_fraction = 0.5;
        c.uav_power_control = PowerControlMode::OpenLoop;
        break;
    case 3:
        c.uav_fraction = 0.5;
        c.uav_power_control = PowerControlMode::MaxPower;
        break;
    default:
        break;
    }
    return c;
}

std::vector<std::uint64_t> ScenarioConfig::seed_list() const
{
    std::vector<std::uint64_t> s;
    for (int i = 0; i < drops; ++i)
        s.push_back(seed + static_cast<std::uint64_t>(i));
    return s;
}

std::vector<FieldError> validate(const ScenarioConfig &c)
{
    std::vector<FieldError> errors;
    auto require = [&](bool ok, const char *field, const char *msg) {
        if (!ok)
            errors.push_back({field, msg});
    };
    auto finite_pos = [](double v) { return std::isfinite(v) && v > 0.0; };

    require(finite_pos(c.area_side_m), "area_side_m", "must be positive and finite");
    require(c.min_ue_bs_2d_m >= 0.0, "min_ue_bs_2d_m", "must be non-negative");
    require(c.min_uav_bs_3d_m >= 0.0, "min_uav_bs_3d_m", "must be non-negative");
    require(c.isd_s_m > 0.0, "isd_s_m", "must be positive");
    require(c.isd_d_m > 0.0, "isd_d_m", "must be positive (use inf for no dedicated tier)");
    require(finite_pos(c.bs_height_standard_m), "bs_height_standard_m", "must be positive");
    require(finite_pos(c.bs_height_dedicated_min_m), "bs_height_dedicated_min_m", "must be positive");
    require(c.bs_height_dedicated_max_m >= c.bs_height_dedicated_min_m, "bs_height_dedicated_max_m",
            "must not be below bs_height_dedicated_min_m");
    require(c.ue_height_m >= 0.0, "ue_height_m", "must be non-negative");
    require(finite_pos(c.uav_height_m), "uav_height_m", "must be positive");
    require(c.max_retries >= 1, "max_retries", "must be at least 1");
    require(finite_pos(c.bandwidth_mhz), "bandwidth_mhz", "must be positive");
    require(finite_pos(c.carrier_ghz), "carrier_ghz", "must be positive");
    require(std::isfinite(c.noise_figure_db), "noise_figure_db", "must be finite");
    require(std::isfinite(c.noise_psd_dbm_hz), "noise_psd_dbm_hz", "must be finite");
    require(std::isfinite(c.pmax_dbm), "pmax_dbm", "must be finite");
    require(std::isfinite(c.p0_dbm), "p0_dbm", "must be finite");
    require(c.alpha >= 0.0 && c.alpha <= 1.0, "alpha", "must lie in [0, 1]");
    require(finite_pos(c.theta_3db_deg), "theta_3db_deg", "must be positive");
    require(finite_pos(c.phi_3db_deg), "phi_3db_deg", "must be positive");
    require(c.sla_v_db >= 0.0, "sla_v_db", "must be non-negative");
    require(c.a_m_db >= 0.0, "a_m_db", "must be non-negative");
    require(c.bs_rows >= 1 && c.bs_cols >= 1, "bs_rows", "array dimensions must be at least 1");
    require(c.user_rows >= 1 && c.user_cols >= 1, "user_rows", "array dimensions must be at least 1");
    require(finite_pos(c.element_spacing), "element_spacing", "must be positive");
    require(!c.uav_pattern.empty(), "uav_pattern", "must be 'bundled' or a file path");
    require(c.users_per_cell >= 0.0 && std::isfinite(c.users_per_cell), "users_per_cell", "must be non-negative");
    require(c.uav_fraction >= 0.0 && c.uav_fraction <= 1.0, "uav_fraction", "must lie in [0, 1]");
    require(c.uav_config >= 0 && c.uav_config <= 3, "uav_config", "must be 0 (custom), 1, 2 or 3");
    require(c.n_u >= 1, "n_u", "must be at least 1");
    require(c.drops >= 1, "drops", "must be at least 1");
    require(c.slots >= 1, "slots", "must be at least 1");
    require(c.scattered_paths >= 0 && c.scattered_paths <= 64, "scattered_paths", "must lie in [0, 64]");
    require(c.azimuth_spread_deg >= 0.0, "azimuth_spread_deg", "must be non-negative");
    require(c.elevation_spread_deg >= 0.0, "elevation_spread_deg", "must be non-negative");
    require(c.excess_loss_mean_db >= 0.0, "excess_loss_mean_db", "must be non-negative");
    require(c.shadowing_los_db >= 0.0, "shadowing_los_db", "must be non-negative");
    require(c.shadowing_nlos_db >= 0.0, "shadowing_nlos_db", "must be non-negative");
    require(finite_pos(c.aerial_los_scale_m), "aerial_los_scale_m", "must be positive");
    require(std::isfinite(c.aerial_los_midpoint_m), "aerial_los_midpoint_m", "must be finite");
    require(c.aerial_outage_probability >= 0.0 && c.aerial_outage_probability <= 1.0, "aerial_outage_probability",
            "must lie in [0, 1]");
    return errors;
}

void ensure_valid(const ScenarioConfig &config)
{
    const auto errors = validate(config);
    if (!errors.empty())
        throw ConfigError(errors.front().field, errors.front().message);
}

void apply_setting(ScenarioConfig &config, const std::string &key, const std::string &value)
{
    find_field(key).set(config, value);
}

std::string get_setting(const ScenarioConfig &config, const std::string &key)
{
    return find_field(key).get(config);
}

std::vector<std::string> setting_keys()
{
    std::vector<std::string> keys;
    for (const auto &f : fields())
        keys.push_back(f.name);
    return keys;
}

std::vector<std::pair<std::string, std::string>> parse_settings(std::istream &in, const std::string &source)
{
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("", source + ":" + std::to_string(line_no) + ": expected 'key = value'");
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

void apply_settings(ScenarioConfig &config, const std::vector<std::pair<std::string, std::string>> &settings)
{
    for (const auto &[k, v] : settings)
        apply_setting(config, k, v);
}

ScenarioConfig parse_config(std::istream &in, const std::string &source)
{
    ScenarioConfig c;
    apply_settings(c, parse_settings(in, source));
    return c;
}

std::string serialize_config(const ScenarioConfig &config)
{
    std::ostringstream out;
    for (const auto &f : fields())
        out << f.name << " = " << f.get(config) << '\n';
    return out.str();
}

const std::vector<Preset> &presets()
{
    static const std::vector<Preset> all = {
        {"table1-config1", "SU-MIMO standard cells, no UAVs", {{"uav_config", "1"}, {"n_u", "1"}, {"mode", "single"}}},
        {"table1-config2",
         "SU-MIMO standard cells, 50% UAVs with open-loop power control",
         {{"uav_config", "2"}, {"n_u", "1"}, {"mode", "single"}}},
        {"table1-config3",
         "SU-MIMO standard cells, 50% UAVs at maximum power",
         {{"uav_config", "3"}, {"n_u", "1"}, {"mode", "single"}}},
        {"mu-mimo",
         "MU-MIMO standard cells, 5 UAVs + 5 UEs per cell, 4 users per slot (sweep n_u for the full study)",
         {{"uav_config", "2"}, {"n_u", "4"}, {"mode", "single"}}},
        {"closed-access",
         "Closed access: UAVs only on dedicated uptilted cells, N_u = 2 (sweep isd_d_m)",
         {{"uav_config", "2"}, {"n_u", "2"}, {"mode", "closed"}, {"isd_d_m", "200"}}},
        {"open-access",
         "Open access: UAVs pick the strongest cell of either tier, N_u = 2 (sweep isd_d_m, inf = baseline)",
         {{"uav_config", "2"}, {"n_u", "2"}, {"mode", "open"}, {"isd_d_m", "200"}}},
        {"desk", "Desk-scale CI setting: 500 m area, 10 drops", {{"area_side_m", "500"}, {"drops", "10"}}},
    };
    return all;
}

const Preset &find_preset(const std::string &name)
{
    for (const auto &p : presets())
        if (p.name == name)
            return p;
    throw ConfigError("preset", "unknown preset '" + name + "'");
}

} // namespace coexsim
