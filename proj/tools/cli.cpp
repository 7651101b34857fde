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

#include "cli.hpp"

#include "coexsim/errors.hpp"
#include "coexsim/output.hpp"
#include "coexsim/sim.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace coexsim::cli {

namespace fs = std::filesystem;

void apply_seed_range(ScenarioConfig &config, const std::string &range)
{
    const auto dots = range.find("..");
    try
    {
        if (dots == std::string::npos)
        {
            config.seed = std::stoull(range);
            config.drops = 1;
            return;
        }
        const std::uint64_t a = std::stoull(range.substr(0, dots));
        const std::uint64_t b = std::stoull(range.substr(dots + 2));
        if (b < a)
            throw ConfigError("seeds", "range end precedes its start");
        config.seed = a;
        config.drops = static_cast<int>(b - a + 1);
    }
    catch (const std::logic_error &)
    {
        throw ConfigError("seeds", "expected a..b, got '" + range + "'");
    }
}

ScenarioConfig resolve_config(const ConfigSources &sources)
{
    ScenarioConfig config;
    if (sources.config_path)
    {
        std::ifstream in(*sources.config_path);
        if (!in)
            throw ConfigError("config", "cannot read " + *sources.config_path);
        apply_settings(config, parse_settings(in, *sources.config_path));
    }
    if (sources.preset)
        apply_settings(config, find_preset(*sources.preset).settings);
    for (const auto &kv : sources.overrides)
    {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigError("set", "expected key=value, got '" + kv + "'");
        apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (sources.seeds)
        apply_seed_range(config, *sources.seeds);
    ensure_valid(config);
    return config;
}

std::vector<std::string> split_values(const std::string &list)
{
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

namespace {

void write_file(const fs::path &path, const std::string &text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + path.string());
    f << text;
}

void add_config_options(CLI::App &cmd, ConfigSources &src)
{
    cmd.add_option("--config", src.config_path, "Scenario file (key = value lines)");
    cmd.add_option("--preset", src.preset, "Bundled preset name (see `presets`)");
    cmd.add_option("--set", src.overrides, "Override one key, e.g. --set isd_d_m=inf (repeatable)");
    cmd.add_option("--seeds", src.seeds, "Inclusive seed range a..b");
}

CampaignResult campaign(const ScenarioConfig &config, int parallel, std::ostream &err)
{
    const auto seeds = config.seed_list();
    CampaignResult r = run_campaign(config, seeds, parallel);
    for (const auto &d : r.drops)
        err << "drop seed=" << d.seed << " sites=" << d.standard_sites << "+" << d.dedicated_sites
            << " users=" << d.users.size() << " slots=" << d.slots << '\n';
    for (const auto &w : r.warnings)
        err << "warning: " << w << '\n';
    return r;
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"coexsim: uplink coexistence of UAVs and terrestrial users in mmWave networks"};
    app.require_subcommand(1);

    ConfigSources run_src, sweep_src, validate_src;
    std::string run_out = "results";
    std::string sweep_out = "results";
    int run_parallel = 1, sweep_parallel = 1;
    std::string sweep_param, sweep_values;

    auto *run = app.add_subcommand("run", "Run one campaign and write samples.csv + summary.json");
    add_config_options(*run, run_src);
    run->add_option("--out", run_out, "Output directory");
    run->add_option("--parallel", run_parallel, "Worker threads")->check(CLI::PositiveNumber);

    auto *sweep = app.add_subcommand("sweep", "Run matched-seed campaigns over a list of values for one key");
    add_config_options(*sweep, sweep_src);
    sweep->add_option("--param", sweep_param, "Configuration key to sweep")->required();
    sweep->add_option("--values", sweep_values, "Comma-separated values")->required();
    sweep->add_option("--out", sweep_out, "Output directory");
    sweep->add_option("--parallel", sweep_parallel, "Worker threads")->check(CLI::PositiveNumber);

    auto *list = app.add_subcommand("presets", "List bundled presets");
    bool show_settings = false;
    list->add_flag("--verbose", show_settings, "Print each preset's settings");

    auto *validate_cmd = app.add_subcommand("validate", "Check a configuration and print it resolved");
    add_config_options(*validate_cmd, validate_src);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        out << app.help();
        return kExitOk;
    }
    catch (const CLI::CallForAllHelp &e)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    }
    catch (const CLI::ParseError &e)
    {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    try
    {
        if (*list)
        {
            for (const auto &p : presets())
            {
                out << p.name << "  " << p.description << '\n';
                if (show_settings)
                    for (const auto &[k, v] : p.settings)
                        out << "    " << k << " = " << v << '\n';
            }
            return kExitOk;
        }
        if (*validate_cmd)
        {
            const ScenarioConfig config = resolve_config(validate_src);
            // Model construction also checks pattern and table files.
            (void)build_models(config);
            out << serialize_config(config);
            return kExitOk;
        }
        if (*run)
        {
            const ScenarioConfig config = resolve_config(run_src);
            const Models check = build_models(config);
            (void)check;
            const CampaignResult r = campaign(config, run_parallel, err);
            fs::create_directories(run_out);
            {
                std::ofstream csv(fs::path(run_out) / "samples.csv", std::ios::binary);
                write_samples_header(csv);
                write_samples_csv(csv, r);
            }
            write_file(fs::path(run_out) / "summary.json", summary_json(config, r));
            out << summary_table(r);
            return r.drops.empty() ? kExitRuntime : kExitOk;
        }
        if (*sweep)
        {
            const ScenarioConfig base = resolve_config(sweep_src);
            const auto values = split_values(sweep_values);
            if (values.empty())
                throw ConfigError("values", "no sweep values given");
            std::vector<ScenarioConfig> configs;
            for (const auto &v : values)
            {
                ScenarioConfig c = base;
                apply_setting(c, sweep_param, v);
                ensure_valid(c);
                (void)build_models(c);
                configs.push_back(c);
            }
            fs::create_directories(sweep_out);
            std::ofstream csv(fs::path(sweep_out) / "samples.csv", std::ios::binary);
            write_samples_header(csv, sweep_param);
            std::string combined = "{\n  \"param\": \"" + sweep_param + "\",\n  \"runs\": [\n";
            bool any = false;
            for (std::size_t i = 0; i < configs.size(); ++i)
            {
                err << sweep_param << " = " << values[i] << '\n';
                const CampaignResult r = campaign(configs[i], sweep_parallel, err);
                any = any || !r.drops.empty();
                write_samples_csv(csv, r, sweep_param, values[i]);
                const std::string summary = summary_json(configs[i], r);
                write_file(fs::path(sweep_out) / ("summary_" + sweep_param + "_" + values[i] + ".json"), summary);
                combined += "    {\"value\": \"" + values[i] + "\", \"summary\": " + summary + "    }";
                combined += i + 1 < configs.size() ? ",\n" : "\n";
                out << "== " << sweep_param << " = " << values[i] << '\n' << summary_table(r);
            }
            combined += "  ]\n}\n";
            write_file(fs::path(sweep_out) / "summary.json", combined);
            return any ? kExitOk : kExitRuntime;
        }
    }
    catch (const ConfigError &e)
    {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (const PatternError &e)
    {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitRuntime;
}

} // namespace coexsim::cli
