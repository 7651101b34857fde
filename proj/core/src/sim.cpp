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

#include "coexsim/sim.hpp"

#include "coexsim/errors.hpp"
#include "coexsim/units.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

namespace coexsim {

Models build_models(const ScenarioConfig &raw)
{
    ensure_valid(raw);
    const ScenarioConfig c = raw.resolved();

    Models m;
    m.area.side_m = c.area_side_m;
    m.isd_s_m = c.isd_s_m;
    m.isd_d_m = c.mode == AccessPolicy::SingleMno ? std::numeric_limits<double>::infinity() : c.isd_d_m;
    m.cosite_dedicated = c.cosite_dedicated;
    m.standard = {Tier::Standard, c.bs_height_standard_m, c.bs_height_standard_m, c.tilt_standard_deg};
    m.dedicated = {Tier::Dedicated, c.bs_height_dedicated_min_m, c.bs_height_dedicated_max_m, c.tilt_dedicated_deg};
    m.placement = {c.min_ue_bs_2d_m, c.min_uav_bs_3d_m, c.ue_height_m, c.uav_height_m, c.uav_array_tilt_deg,
                   c.max_retries};
    m.population = {c.users_per_cell * (1.0 - c.uav_fraction), c.users_per_cell * c.uav_fraction};

    m.channel.carrier_ghz = c.carrier_ghz;
    m.channel.scattered_paths = c.scattered_paths;
    m.channel.azimuth_spread_deg = c.azimuth_spread_deg;
    m.channel.elevation_spread_deg = c.elevation_spread_deg;
    m.channel.excess_loss_mean_db = c.excess_loss_mean_db;
    m.channel.shadowing_los_db = c.shadowing_los_db;
    m.channel.shadowing_nlos_db = c.shadowing_nlos_db;
    m.channel.aerial.los_midpoint_m = c.aerial_los_midpoint_m;
    m.channel.aerial.los_scale_m = c.aerial_los_scale_m;
    m.channel.aerial.outage_probability = c.aerial_outage_probability;
    m.channel.aerial.los = {c.aerial_pl_los_intercept_db, c.aerial_pl_los_distance_slope,
                            c.aerial_pl_los_frequency_slope};
    m.channel.aerial.nlos = {c.aerial_pl_nlos_intercept_db, c.aerial_pl_nlos_distance_slope,
                             c.aerial_pl_nlos_frequency_slope};
    if (!c.aerial_los_table.empty())
        m.channel.aerial.los_table = load_los_table(c.aerial_los_table);

    m.bs_array = {c.bs_rows, c.bs_cols, c.element_spacing};
    m.user_array = {c.user_rows, c.user_cols, c.element_spacing};
    const ParametricElementPattern element{c.theta_3db_deg, c.phi_3db_deg, c.sla_v_db, c.a_m_db, c.g_max_dbi};
    m.bs_element = element;
    m.ue_element = element;
    if (c.uav_pattern == "bundled")
        m.uav_element = bundled_uav_pattern();
    else
        m.uav_element = std::make_shared<const TabulatedPattern>(load_pattern(c.uav_pattern));

    m.ue_power = {c.p0_dbm, c.alpha, c.pmax_dbm, c.ue_power_control};
    m.uav_power = {c.p0_dbm, c.alpha, c.pmax_dbm, c.uav_power_control};
    m.bandwidth_hz = c.bandwidth_mhz * 1e6;
    m.noise_psd_w_per_hz = noise_psd_w_per_hz(c.noise_psd_dbm_hz, c.noise_figure_db);
    m.mode = c.mode;
    m.n_u = c.n_u;
    m.slots = c.slots;
    m.extend_slots = c.extend_slots;
    m.outage_sinr_db = c.outage_sinr_db;
    return m;
}

Deployment deploy(const Models &m, std::uint64_t seed)
{
    Deployment d;
    Rng standard_rng = Rng::derive(seed, Stream::StandardBs);
    d.base_stations = deploy_base_stations(m.area, m.isd_s_m, m.standard, standard_rng, 0);
    const int first_dedicated = static_cast<int>(d.base_stations.size());

    Rng dedicated_rng = Rng::derive(seed, Stream::DedicatedBs);
    if (!std::isinf(m.isd_d_m))
    {
        if (m.cosite_dedicated)
        {
            // Thin the standard sites to the dedicated density.
            const double keep = std::min(1.0, (m.isd_s_m * m.isd_s_m) / (m.isd_d_m * m.isd_d_m));
            const std::size_t n_standard = d.base_stations.size();
            for (std::size_t i = 0; i < n_standard; ++i)
            {
                const double u = dedicated_rng.uniform();
                const double h = dedicated_rng.uniform(m.dedicated.height_min_m, m.dedicated.height_max_m);
                const double offset = dedicated_rng.uniform(0.0, 360.0);
                if (u >= keep)
                    continue;
                BaseStation bs;
                bs.id = static_cast<int>(d.base_stations.size());
                bs.tier = Tier::Dedicated;
                bs.height_m = h;
                bs.position = Vec3(d.base_stations[i].position.x(), d.base_stations[i].position.y(), h);
                for (int s = 0; s < 3; ++s)
                    bs.sectors[s].orientation = {std::fmod(offset + 120.0 * s, 360.0), m.dedicated.tilt_deg};
                d.base_stations.push_back(bs);
            }
        }
        else
        {
            auto dedicated = deploy_base_stations(m.area, m.isd_d_m, m.dedicated, dedicated_rng, first_dedicated);
            d.base_stations.insert(d.base_stations.end(), dedicated.begin(), dedicated.end());
        }
    }

    Rng user_rng = Rng::derive(seed, Stream::Users);
    d.users = deploy_users(m.area, d.base_stations, m.population, m.placement, user_rng);
    return d;
}

namespace {

struct Fnv
{
    std::uint64_t h = 0xcbf29ce484222325ULL;

    void bytes(const void *p, std::size_t n)
    {
        const auto *b = static_cast<const unsigned char *>(p);
        for (std::size_t i = 0; i < n; ++i)
        {
            h ^= b[i];
            h *= 0x100000001b3ULL;
        }
    }
    void real(double v) { bytes(&v, sizeof v); }
    void integer(std::int64_t v) { bytes(&v, sizeof v); }
};

} // namespace

std::uint64_t deployment_hash(const Deployment &d, bool standard_tier_only)
{
    Fnv f;
    for (const auto &bs : d.base_stations)
    {
        if (standard_tier_only && bs.tier != Tier::Standard)
            continue;
        f.integer(bs.id);
        f.integer(static_cast<int>(bs.tier));
        f.real(bs.position.x());
        f.real(bs.position.y());
        f.real(bs.position.z());
        for (const auto &s : bs.sectors)
        {
            f.real(s.orientation.azimuth_deg);
            f.real(s.orientation.tilt_deg);
        }
    }
    if (!standard_tier_only)
        for (const auto &u : d.users)
        {
            f.integer(u.id);
            f.integer(static_cast<int>(u.kind));
            f.real(u.position.x());
            f.real(u.position.y());
            f.real(u.position.z());
            f.real(u.orientation.azimuth_deg);
            f.real(u.orientation.tilt_deg);
        }
    return f.h;
}

std::string to_string(Population p)
{
    return p == Population::Ue ? "UE" : "UAV";
}

std::string to_string(Metric m)
{
    switch (m)
    {
    case Metric::SinrDb:
        return "SINR_dB";
    case Metric::InrDb:
        return "INR_dB";
    case Metric::RateBps:
        return "rate_bps";
    }
    return "?";
}

DropResult run_drop(const Models &m, std::uint64_t seed)
{
    const Deployment dep = deploy(m, seed);
    const auto &bss = dep.base_stations;
    const auto &users = dep.users;
    const std::vector<Cell> cells = build_cells(bss);
    const std::size_t n_users = users.size();
    const std::size_t n_bs = bss.size();
    const std::size_t n_cells = cells.size();

    DropResult result;
    result.seed = seed;
    result.deployment_hash = deployment_hash(dep, false);
    result.standard_hash = deployment_hash(dep, true);
    for (const auto &bs : bss)
        (bs.tier == Tier::Standard ? result.standard_sites : result.dedicated_sites)++;

    auto user_end = [&](const UserNode &u) {
        return ArrayEnd{&m.user_array, u.kind == UserKind::Uav ? &m.uav_element : &m.ue_element, u.orientation};
    };
    auto cell_end = [&](const Cell &c) {
        return ArrayEnd{&m.bs_array, &m.bs_element,
                        bss[static_cast<std::size_t>(c.bs_index)].sectors[static_cast<std::size_t>(c.sector)].orientation};
    };

    // One propagation realization per (user, site), shared by its three sectors.
    std::vector<ChannelRealization> realizations(n_users * n_bs);
    for (std::size_t u = 0; u < n_users; ++u)
    {
        const LinkKind kind = users[u].kind == UserKind::Uav ? LinkKind::Aerial : LinkKind::Terrestrial;
        for (std::size_t b = 0; b < n_bs; ++b)
        {
            Rng rng = Rng::derive(seed, Stream::Channel, {u, b});
            realizations[u * n_bs + b] =
                sample_realization(make_link_geometry(users[u].position, bss[b].position, m.area), kind, m.channel, rng);
        }
    }

    // Long-term transmit beams towards every admissible site, then the
    // association metric per sector at maximum power.
    std::vector<EigenPair> beams(n_users * n_bs);
    Eigen::MatrixXd metric = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_users), static_cast<Eigen::Index>(n_cells));
    for (std::size_t u = 0; u < n_users; ++u)
    {
        const ArrayEnd tx = user_end(users[u]);
        const double pmax_w = dbm_to_watt(users[u].kind == UserKind::Uav ? m.uav_power.pmax_dbm : m.ue_power.pmax_dbm);
        for (std::size_t b = 0; b < n_bs; ++b)
        {
            const auto &real = realizations[u * n_bs + b];
            if (real.state == LinkState::Outage || !admissible(users[u].kind, bss[b].tier, m.mode))
                continue;
            auto &beam = beams[u * n_bs + b];
            beam = principal_eigenpair(tx_covariance(real, tx));
            for (int s = 0; s < 3; ++s)
            {
                const std::size_t c = b * 3 + static_cast<std::size_t>(s);
                metric(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(c)) =
                    pmax_w * long_term_gain(real, beam.vector, tx, cell_end(cells[c]));
            }
        }
    }

    const Association assoc = associate(users, cells, metric, m.mode);

    std::vector<double> p_tx_w(n_users, 0.0);
    result.users.resize(n_users);
    for (std::size_t u = 0; u < n_users; ++u)
    {
        auto &rec = result.users[u];
        rec.id = users[u].id;
        rec.kind = users[u].kind;
        rec.serving_cell = assoc.serving_cell[u];
        auto &census = result.census[static_cast<std::size_t>(population_of(users[u].kind))];
        census.total++;
        if (!rec.associated())
        {
            census.association_outage++;
            continue;
        }
        census.associated++;
        const Cell &cell = cells[static_cast<std::size_t>(rec.serving_cell)];
        rec.serving_tier = cell.tier;
        rec.cell_associated = assoc.associated_count(static_cast<std::size_t>(rec.serving_cell));
        if (cell.tier == Tier::Dedicated)
            census.on_dedicated++;
        // Coupling loss: pathloss net of the long-term transmit beam gain and the
        // receiver's boresight element gain.
        const double beam_power = beams[u * n_bs + static_cast<std::size_t>(cell.bs_index)].value;
        const double coupling_db = -linear_to_db(beam_power) - m.bs_element.boresight_gain_dbi();
        const auto &pc = users[u].kind == UserKind::Uav ? m.uav_power : m.ue_power;
        rec.p_tx_dbm = open_loop_power_dbm(pc, coupling_db);
        p_tx_w[u] = dbm_to_watt(rec.p_tx_dbm);
    }

    int n_slots = m.slots;
    if (m.extend_slots)
        for (std::size_t c = 0; c < n_cells; ++c)
            n_slots = std::max(n_slots, (assoc.associated_count(c) + m.n_u - 1) / m.n_u);
    result.slots = n_slots;
    Rng schedule_rng = Rng::derive(seed, Stream::Schedule);
    const Schedule schedule = build_schedule(assoc, m.n_u, n_slots, schedule_rng);

    // Effective channels of every associated user at every loaded cell, using
    // the user's serving beam.
    LinkTable links(n_users, n_cells);
    const int n_rx = m.bs_array.size();
    for (std::size_t u = 0; u < n_users; ++u)
    {
        if (assoc.in_outage(u))
            continue;
        const ArrayEnd tx = user_end(users[u]);
        const std::size_t serving_bs = static_cast<std::size_t>(cells[static_cast<std::size_t>(assoc.serving_cell[u])].bs_index);
        const Eigen::VectorXcd &f = beams[u * n_bs + serving_bs].vector;
        for (std::size_t c = 0; c < n_cells; ++c)
        {
            if (assoc.cell_users[c].empty())
                continue;
            auto &link = links.at(u, c);
            const auto &real = realizations[u * n_bs + static_cast<std::size_t>(cells[c].bs_index)];
            if (real.state == LinkState::Outage)
            {
                link.h = Eigen::VectorXcd::Zero(n_rx);
                link.gain = 0.0;
                continue;
            }
            const EffectiveChannel eff = effective_simo_channel(real, f, tx, cell_end(cells[c]));
            link.h = eff.h;
            link.gain = eff.effective_gain();
        }
    }

    std::vector<double> rate_sum(n_users, 0.0);
    for (std::size_t s = 0; s < schedule.slot_count(); ++s)
    {
        SlotInputs in;
        in.active = &schedule.slots[s];
        in.links = &links;
        in.p_tx_w = p_tx_w;
        in.noise_psd_w_per_hz = m.noise_psd_w_per_hz;
        in.bandwidth_hz = m.bandwidth_hz;
        for (const auto &o : evaluate_slot(in))
        {
            const auto u = static_cast<std::size_t>(o.user);
            auto &rec = result.users[u];
            const double sinr_db = linear_to_db(o.sinr);
            result.samples.push_back({o.user, static_cast<int>(s), sinr_db, linear_to_db(o.inr)});
            rec.active_slots++;
            rec.max_sinr_db = std::max(rec.max_sinr_db, sinr_db);
            rate_sum[u] += m.bandwidth_hz * std::log2(1.0 + o.sinr);
        }
    }

    for (std::size_t u = 0; u < n_users; ++u)
    {
        auto &rec = result.users[u];
        if (!rec.associated() || rec.active_slots == 0)
            continue;
        const int n_active = std::min(m.n_u, rec.cell_associated);
        const double mean_rate_full_band = rate_sum[u] / rec.active_slots;
        rec.rate_bps = static_cast<double>(n_active) / rec.cell_associated * mean_rate_full_band;
    }
    return result;
}

DropResult run_drop(const ScenarioConfig &config, std::uint64_t seed)
{
    return run_drop(build_models(config), seed);
}

double quantile(std::span<const double> sorted, double q)
{
    if (sorted.empty())
        throw std::invalid_argument("quantile: empty series");
    if (!(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("quantile: q must lie in [0, 1]");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double t = pos - static_cast<double>(lo);
    return t == 0.0 ? sorted[lo] : sorted[lo] + t * (sorted[hi] - sorted[lo]);
}

double quantile(const CdfSeries &series, double q)
{
    return quantile(std::span<const double>(series.samples), q);
}

CdfSeries collect_series(std::span<const DropResult> drops, Metric metric, Population population)
{
    CdfSeries s;
    s.metric = metric;
    s.population = population;
    for (const auto &d : drops)
    {
        s.seeds.push_back(d.seed);
        if (metric == Metric::RateBps)
        {
            for (const auto &u : d.users)
                if (population_of(u.kind) == population && u.associated() && u.active_slots > 0)
                    s.samples.push_back(u.rate_bps);
            continue;
        }
        for (const auto &x : d.samples)
            if (population_of(d.users[static_cast<std::size_t>(x.user)].kind) == population)
                s.samples.push_back(metric == Metric::SinrDb ? x.sinr_db : x.inr_db);
    }
    std::sort(s.samples.begin(), s.samples.end());
    return s;
}

const CdfSeries &CampaignResult::find(Metric metric, Population population) const
{
    for (const auto &s : series)
        if (s.metric == metric && s.population == population)
            return s;
    throw std::out_of_range("CampaignResult::find: series not present");
}

CampaignResult run_campaign(const ScenarioConfig &config, std::span<const std::uint64_t> seeds, int parallelism)
{
    if (seeds.empty())
        throw ConfigError("seeds", "campaign needs at least one seed");
    const Models models = build_models(config);

    std::vector<std::optional<DropResult>> slots(seeds.size());
    std::vector<std::string> errors(seeds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < seeds.size(); i = next++)
        {
            try
            {
                slots[i] = run_drop(models, seeds[i]);
            }
            catch (const std::exception &e)
            {
                errors[i] = "drop with seed " + std::to_string(seeds[i]) + " discarded: " + e.what();
            }
        }
    };
    const int n_threads = std::clamp<int>(parallelism, 1, static_cast<int>(seeds.size()));
    if (n_threads == 1)
        worker();
    else
    {
        std::vector<std::jthread> pool;
        for (int t = 0; t < n_threads; ++t)
            pool.emplace_back(worker);
    }

    CampaignResult out;
    for (std::size_t i = 0; i < seeds.size(); ++i)
    {
        if (slots[i])
            out.drops.push_back(std::move(*slots[i]));
        else
            out.warnings.push_back(errors[i]);
    }
    for (Metric metric : {Metric::SinrDb, Metric::InrDb, Metric::RateBps})
        for (Population pop : {Population::Ue, Population::Uav})
            out.series.push_back(collect_series(out.drops, metric, pop));
    return out;
}

double outage_fraction(std::span<const DropResult> drops, Population population, double threshold_db)
{
    std::size_t total = 0;
    std::size_t outage = 0;
    for (const auto &d : drops)
        for (const auto &u : d.users)
        {
            if (population_of(u.kind) != population)
                continue;
            ++total;
            if (!u.associated() || (u.active_slots > 0 && u.max_sinr_db < threshold_db))
                ++outage;
        }
    return total == 0 ? 0.0 : static_cast<double>(outage) / static_cast<double>(total);
}

} // namespace coexsim
