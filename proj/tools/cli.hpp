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

#include "coexsim/config.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace coexsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;

struct ConfigSources
{
    std::optional<std::string> config_path;
    std::optional<std::string> preset;
    std::vector<std::string> overrides;  // key=value
    std::optional<std::string> seeds;    // a..b
};

// Defaults, then the file, then the preset, then each override in order.
// Throws ConfigError (field-level) on any problem, including failed validation.
ScenarioConfig resolve_config(const ConfigSources &sources);

// Parses `a..b` (inclusive) into the seed/drops pair of the config.
void apply_seed_range(ScenarioConfig &config, const std::string &range);

std::vector<std::string> split_values(const std::string &list);

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace coexsim::cli
