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

#include "coexsim/output.hpp"

#include "coexsim/units.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace coexsim {

namespace {

std::string quantile_key(double q)
{
    char buf[8];
    std::snprintf(buf, sizeof buf, "q%02d", static_cast<int>(std::lround(q * 100.0)));
    return buf;
}

void row(std::ostream &out, const std::string &prefix, Population pop, Metric metric, std::uint64_t seed, int user,
         double value)
{
    out << prefix << to_string(pop) << ',' << to_string(metric) << ',' << seed << ',' << user << ','
        << format_double(value) << '\n';
}

} // namespace

void write_samples_header(std::ostream &out, const std::string &sweep_key)
{
    if (!sweep_key.empty())
        out << sweep_key << ',';
    out << "population,metric,drop,user,value\n";
}

void write_samples_csv(std::ostream &out, const CampaignResult &result, const std::string &sweep_key,
                       const std::string &sweep_value)
{
    const std::string prefix = sweep_key.empty() ? std::string() : sweep_value + ",";
    for (const auto &d : result.drops)
    {
        for (const auto &s : d.samples)
        {
            const Population pop = population_of(d.users[static_cast<std::size_t>(s.user)].kind);
            row(out, prefix, pop, Metric::SinrDb, d.seed, s.user, s.sinr_db);
            row(out, prefix, pop, Metric::InrDb, d.seed, s.user, s.inr_db);
        }
        for (const auto &u : d.users)
            if (u.associated() && u.active_slots > 0)
                row(out, prefix, population_of(u.kind), Metric::RateBps, d.seed, u.id, u.rate_bps);
    }
}

std::string summary_json(const ScenarioConfig &config, const CampaignResult &result)
{
    using nlohmann::ordered_json;
    ordered_json j;

    ordered_json cfg = ordered_json::object();
    for (const auto &key : setting_keys())
        cfg[key] = get_setting(config, key);
    j["config"] = cfg;

    ordered_json seeds = ordered_json::array();
    for (const auto &d : result.drops)
        seeds.push_back(d.seed);
    j["completed_drops"] = seeds;
    j["warnings"] = result.warnings;

    ordered_json series = ordered_json::array();
    for (const auto &s : result.series)
    {
        ordered_json e;
        e["population"] = to_string(s.population);
        e["metric"] = to_string(s.metric);
        e["count"] = s.count();
        ordered_json q = ordered_json::object();
        for (double p : kSummaryQuantiles)
        {
            if (s.count() == 0)
                q[quantile_key(p)] = nullptr;
            else
                q[quantile_key(p)] = quantile(s, p);
        }
        e["quantiles"] = q;
        series.push_back(e);
    }
    j["series"] = series;

    const double threshold = config.outage_sinr_db;
    ordered_json census = ordered_json::object();
    for (Population pop : {Population::Ue, Population::Uav})
    {
        Census total;
        for (const auto &d : result.drops)
        {
            const auto &c = d.census_of(pop);
            total.total += c.total;
            total.associated += c.associated;
            total.association_outage += c.association_outage;
            total.on_dedicated += c.on_dedicated;
        }
        ordered_json e;
        e["users"] = total.total;
        e["associated"] = total.associated;
        e["association_outage"] = total.association_outage;
        e["on_dedicated"] = total.on_dedicated;
        e["outage_fraction"] = outage_fraction(result.drops, pop, threshold);
        census[to_string(pop)] = e;
    }
    j["census"] = census;
    return j.dump(2) + "\n";
}

std::string summary_table(const CampaignResult &result)
{
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "%-4s %-9s %8s %12s %12s %12s %12s %12s\n", "pop", "metric", "count", "q05",
                  "q25", "q50", "q75", "q95");
    out << line;
    for (const auto &s : result.series)
    {
        const double scale = s.metric == Metric::RateBps ? 1e-6 : 1.0;
        std::snprintf(line, sizeof line, "%-4s %-9s %8zu", to_string(s.population).c_str(),
                      (s.metric == Metric::RateBps ? std::string("rate_Mbps") : to_string(s.metric)).c_str(),
                      s.count());
        out << line;
        for (double p : kSummaryQuantiles)
        {
            if (s.count() == 0)
                std::snprintf(line, sizeof line, " %12s", "-");
            else
                std::snprintf(line, sizeof line, " %12.3f", quantile(s, p) * scale);
            out << line;
        }
        out << '\n';
    }
    return out.str();
}

} // namespace coexsim
