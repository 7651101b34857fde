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

#include "coexsim/network.hpp"
#include "coexsim/radio.hpp"

#include <cstdint>
#include <istream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace coexsim {

// Every tunable of a campaign. Defaults follow the reference urban mmWave
// deployment (28 GHz, 400 MHz, 200 m standard ISD, 10 users per cell).
struct ScenarioConfig
{
    // deployment
    double area_side_m = 1000.0;
    double min_ue_bs_2d_m = 10.0;
    double min_uav_bs_3d_m = 10.0;
    double isd_s_m = 200.0;
    double isd_d_m = std::numeric_limits<double>::infinity();
    double bs_height_standard_m = 10.0;
    double bs_height_dedicated_min_m = 10.0;
    double bs_height_dedicated_max_m = 30.0;
    double tilt_standard_deg = -12.0;
    double tilt_dedicated_deg = 45.0;
    bool cosite_dedicated = false;
    double ue_height_m = 1.5;
    double uav_height_m = 120.0;
    double uav_array_tilt_deg = -90.0;
    int max_retries = 1000;

    // radio
    double bandwidth_mhz = 400.0;
    double carrier_ghz = 28.0;
    double noise_figure_db = 6.0;
    double noise_psd_dbm_hz = -174.0;
    double pmax_dbm = 23.0;
    double p0_dbm = -82.0;
    double alpha = 0.8;
    PowerControlMode ue_power_control = PowerControlMode::OpenLoop;
    PowerControlMode uav_power_control = PowerControlMode::OpenLoop;

    // antennas
    double theta_3db_deg = 65.0;
    double phi_3db_deg = 65.0;
    double sla_v_db = 30.0;
    double a_m_db = 30.0;
    double g_max_dbi = 8.0;
    int bs_rows = 8;
    int bs_cols = 8;
    int user_rows = 4;
    int user_cols = 4;
    double element_spacing = 0.5;
    std::string uav_pattern = "bundled";

    // population and sharing
    double users_per_cell = 10.0;
    double uav_fraction = 0.5;
    int uav_config = 0;  // 0 = use the explicit fields; 1..3 select a UAV penetration preset
    AccessPolicy mode = AccessPolicy::SingleMno;
    int n_u = 1;

    // campaign
    int drops = 50;
    int slots = 10;
    std::uint64_t seed = 1;
    bool extend_slots = true;
    double outage_sinr_db = -6.0;

    // channel
    int scattered_paths = 4;
    double azimuth_spread_deg = 30.0;
    double elevation_spread_deg = 10.0;
    double excess_loss_mean_db = 6.0;
    double shadowing_los_db = 4.0;
    double shadowing_nlos_db = 7.8;
    double aerial_los_midpoint_m = 200.0;
    double aerial_los_scale_m = 40.0;
    double aerial_outage_probability = 0.0;
    std::string aerial_los_table;
    double aerial_pl_los_intercept_db = 32.4;
    double aerial_pl_los_distance_slope = 21.0;
    double aerial_pl_los_frequency_slope = 20.0;
    double aerial_pl_nlos_intercept_db = 22.4;
    double aerial_pl_nlos_distance_slope = 35.3;
    double aerial_pl_nlos_frequency_slope = 21.3;

    // Applies the UAV penetration selector: 1 = no UAVs, 2 = half UAVs with
    // open-loop power control, 3 = half UAVs at maximum power.
    ScenarioConfig resolved() const;

    std::vector<std::uint64_t> seed_list() const;
};

struct FieldError
{
    std::string field;
    std::string message;
};

std::vector<FieldError> validate(const ScenarioConfig &config);
// Throws ConfigError naming the first invalid field.
void ensure_valid(const ScenarioConfig &config);

// Sets one field from its textual value; throws ConfigError for unknown keys
// or unparsable values. Range checks are left to validate().
void apply_setting(ScenarioConfig &config, const std::string &key, const std::string &value);
std::string get_setting(const ScenarioConfig &config, const std::string &key);
std::vector<std::string> setting_keys();

// `key = value` lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> parse_settings(std::istream &in, const std::string &source = "<config>");
void apply_settings(ScenarioConfig &config, const std::vector<std::pair<std::string, std::string>> &settings);
ScenarioConfig parse_config(std::istream &in, const std::string &source = "<config>");
std::string serialize_config(const ScenarioConfig &config);

std::string format_double(double v);

struct Preset
{
    std::string name;
    std::string description;
    std::vector<std::pair<std::string, std::string>> settings;
};

const std::vector<Preset> &presets();
// Throws ConfigError("preset", ...) for unknown names.
const Preset &find_preset(const std::string &name);

std::string to_string(PowerControlMode mode);
std::string to_string(AccessPolicy mode);

} // namespace coexsim
