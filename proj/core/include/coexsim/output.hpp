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
#include "coexsim/sim.hpp"

#include <ostream>
#include <string>

namespace coexsim {

inline constexpr std::array<double, 5> kSummaryQuantiles = {0.05, 0.25, 0.50, 0.75, 0.95};

// Header `population,metric,drop,user,value`; with a non-empty `sweep_key`
// a leading column named after the swept parameter carries `sweep_value`.
void write_samples_header(std::ostream &out, const std::string &sweep_key = {});
void write_samples_csv(std::ostream &out, const CampaignResult &result, const std::string &sweep_key = {},
                       const std::string &sweep_value = {});

// Quantiles (5, 25, 50, 75, 95 %) per (metric, population), outage census,
// warnings and the full resolved configuration.
std::string summary_json(const ScenarioConfig &config, const CampaignResult &result);

// Plain-text quantile table for terminal output.
std::string summary_table(const CampaignResult &result);

} // namespace coexsim
