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
#include "coexsim/channel.hpp"
#include "coexsim/config.hpp"
#include "coexsim/geometry.hpp"
#include "coexsim/network.hpp"
#include "coexsim/radio.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace coexsim {

// Immutable model objects derived from a resolved ScenarioConfig; shared by
// every drop of a campaign.
struct Models
{
    Area area;
    double isd_s_m = 200.0;
    double isd_d_m = 0.0;
    bool cosite_dedicated = false;
    TierParams standard;
    TierParams dedicated;
    UserPlacement placement;
    UserPopulation population;
    ChannelParams channel;
    UraGeometry bs_array;
    UraGeometry user_array;
    ElementPattern bs_element;
    ElementPattern ue_element;
    ElementPattern uav_element;
    PowerControlParams ue_power;
    PowerControlParams uav_power;
    double noise_psd_w_per_hz = 0.0;
    double bandwidth_hz = 0.0;
    AccessPolicy mode = AccessPolicy::SingleMno;
    int n_u = 1;
    int slots = 10;
    bool extend_slots = true;
    double outage_sinr_db = -6.0;
};

// Validates, resolves the penetration selector, and loads pattern/table files.
Models build_models(const ScenarioConfig &config);

struct Deployment
{
    std::vector<BaseStation> base_stations;  // standard tier first, then dedicated
    std::vector<UserNode> users;             // UEs first, then UAVs
};

Deployment deploy(const Models &models, std::uint64_t seed);

// FNV-1a over the deployed geometry. With `standard_tier_only`, dedicated
// sites are skipped, which identifies matched seeds across ISD_d sweeps.
std::uint64_t deployment_hash(const Deployment &deployment, bool standard_tier_only = false);

enum class Population
{
    Ue = 0,
    Uav = 1,
};

inline Population population_of(UserKind kind) { return kind == UserKind::Ue ? Population::Ue : Population::Uav; }

enum class Metric
{
    SinrDb,
    InrDb,
    RateBps,
};

std::string to_string(Population p);
std::string to_string(Metric m);

struct UserRecord
{
    int id = 0;
    UserKind kind = UserKind::Ue;
    int serving_cell = Association::kOutage;
    Tier serving_tier = Tier::Standard;
    int cell_associated = 0;  // N_c of the serving cell
    int active_slots = 0;
    double p_tx_dbm = 0.0;
    double rate_bps = 0.0;
    double max_sinr_db = kNoSinr;

    static constexpr double kNoSinr = -1e300;

    bool associated() const { return serving_cell != Association::kOutage; }
};

struct SlotSample
{
    int user = 0;
    int slot = 0;
    double sinr_db = 0.0;
    double inr_db = 0.0;
};

struct Census
{
    int total = 0;
    int associated = 0;
    int association_outage = 0;
    int on_dedicated = 0;
};

struct DropResult
{
    std::uint64_t seed = 0;
    int standard_sites = 0;
    int dedicated_sites = 0;
    int slots = 0;
    std::uint64_t deployment_hash = 0;
    std::uint64_t standard_hash = 0;
    std::vector<UserRecord> users;
    std::vector<SlotSample> samples;
    std::array<Census, 2> census{};

    const Census &census_of(Population p) const { return census[static_cast<std::size_t>(p)]; }
};

// Full pipeline for one seed: deploy, channels, beams, association, power
// control, schedule, per-slot SINR, aggregation. Bit-identical for a given
// (models, seed). Throws DeploymentError when placement fails.
DropResult run_drop(const Models &models, std::uint64_t seed);
DropResult run_drop(const ScenarioConfig &config, std::uint64_t seed);

// Empirical distribution with sorted samples.
struct CdfSeries
{
    Metric metric = Metric::SinrDb;
    Population population = Population::Ue;
    std::vector<double> samples;
    std::vector<std::uint64_t> seeds;

    std::size_t count() const { return samples.size(); }
};

// Linear interpolation between order statistics; q = 0 / 1 give min / max.
// Throws std::invalid_argument on an empty series or q outside [0, 1].
double quantile(std::span<const double> sorted_samples, double q);
double quantile(const CdfSeries &series, double q);

CdfSeries collect_series(std::span<const DropResult> drops, Metric metric, Population population);

struct CampaignResult
{
    std::vector<DropResult> drops;       // completed drops in seed-list order
    std::vector<std::string> warnings;   // one per discarded drop
    std::vector<CdfSeries> series;       // every (metric, population) pair

    const CdfSeries &find(Metric metric, Population population) const;
};

// Drops run on up to `parallelism` worker threads; results are merged in
// seed-list order, so output does not depend on the degree of parallelism.
CampaignResult run_campaign(const ScenarioConfig &config, std::span<const std::uint64_t> seeds, int parallelism = 1);

// Fraction of a population that is unattached or whose SINR stayed below
// `threshold_db` in every active slot.
double outage_fraction(std::span<const DropResult> drops, Population population, double threshold_db);

} // namespace coexsim
