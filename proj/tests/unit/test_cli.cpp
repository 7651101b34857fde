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


#include <catch2/catch_amalgamated.hpp>

#include "cli.hpp"
#include "coexsim/errors.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

// Covered tests:
// - Exit codes: success, configuration errors (with field), runtime errors
// - Three-layer precedence: file < preset < --set
// - run writes samples.csv and summary.json with quantile keys
// - sweep writes a keyed combined CSV and per-value summaries
// - Single-value sweep matches run
// - Byte-identical output across parallelism

namespace fs = std::filesystem;
using namespace coexsim;

namespace {

struct Invocation
{
    int code;
    std::string out;
    std::string err;
};

Invocation invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "coexsim");
    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

fs::path scratch(const std::string &name)
{
    const fs::path p = fs::temp_directory_path() / ("coexsim_cli_" + name);
    fs::remove_all(p);
    return p;
}

// Small and quick scenario used for every campaign in this file.
const std::vector<std::string> kSmall = {"--set", "area=400", "--set", "users_per_cell=4", "--set", "slots=3"};

std::vector<std::string> with(std::vector<std::string> a, const std::vector<std::string> &b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

} // namespace

TEST_CASE("CLI - validate and exit codes")
{
    auto r = invoke({"validate", "--set", "alpha=1.5"});
    CHECK(r.code == cli::kExitConfig);
    CHECK(r.err.find("alpha") != std::string::npos);

    r = invoke({"validate"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("alpha = 0.8\n") != std::string::npos);

    CHECK(invoke({"validate", "--preset", "nope"}).code == cli::kExitConfig);
    CHECK(invoke({"validate", "--set", "alpha"}).code == cli::kExitConfig);
    CHECK(invoke({"validate", "--set", "bogus_key=1"}).err.find("bogus_key") != std::string::npos);
    CHECK(invoke({"validate", "--seeds", "9..3"}).code == cli::kExitConfig);
    CHECK(invoke({"validate", "--seeds", "a..b"}).code == cli::kExitConfig);
    CHECK(invoke({"validate", "--config", "/nonexistent/file.cfg"}).code == cli::kExitConfig);
    CHECK(invoke({"validate", "--set", "uav_pattern=/nonexistent.csv"}).code == cli::kExitConfig);
    CHECK(invoke({"run", "--wat"}).code == cli::kExitConfig);
    CHECK(invoke({}).code == cli::kExitConfig);
    CHECK(invoke({"--help"}).code == cli::kExitOk);

    // Placement that can never succeed: every drop is discarded.
    const fs::path dir = scratch("fail");
    r = invoke(with({"run", "--out", dir.string(), "--set", "min_ue_bs_2d_m=1000", "--set", "max_retries=3",
                  "--seeds", "1..1"},
                 kSmall));
    CHECK(r.code == cli::kExitRuntime);
    CHECK(r.err.find("discarded") != std::string::npos);
}

TEST_CASE("CLI - presets listing")
{
    const auto r = invoke({"presets"});
    CHECK(r.code == 0);
    for (const char *n : {"table1-config1", "table1-config2", "table1-config3", "mu-mimo",
                          "closed-access", "open-access", "desk"})
        CHECK(r.out.find(n) != std::string::npos);
}

TEST_CASE("CLI - precedence")
{
    const fs::path file = fs::temp_directory_path() / "coexsim_precedence.cfg";
    {
        std::ofstream f(file);
        f << "isd_s_m = 300\nalpha = 0.5\nn_u = 3\nisd_d_m = 50\n";
    }
    cli::ConfigSources src;
    src.config_path = file.string();
    src.preset = "closed-access";
    src.overrides = {"isd_d_m=100"};
    src.seeds = "4..9";
    const ScenarioConfig c = cli::resolve_config(src);
    CHECK(c.isd_s_m == 300.0);  // file only
    CHECK(c.alpha == 0.5);      // file only
    CHECK(c.n_u == 2);          // preset beats file
    CHECK(c.mode == AccessPolicy::ClosedAccess);
    CHECK(c.isd_d_m == 100.0);  // --set beats preset
    CHECK(c.seed == 4);
    CHECK(c.drops == 6);

    const auto r = invoke({"validate", "--config", file.string(), "--preset", "closed-access", "--set",
                        "isd_d_m=100"});
    CHECK(r.code == 0);
    CHECK(r.out.find("isd_d_m = 100\n") != std::string::npos);
    CHECK(r.out.find("n_u = 2\n") != std::string::npos);
    fs::remove(file);
}

TEST_CASE("CLI - run writes results")
{
    const fs::path dir = scratch("run");
    auto r = invoke(with({"run", "--preset", "table1-config2", "--seeds", "1..2", "--out", dir.string()}, kSmall));
    REQUIRE(r.code == 0);
    CHECK(r.out.find("q50") != std::string::npos);
    REQUIRE(fs::exists(dir / "samples.csv"));
    REQUIRE(fs::exists(dir / "summary.json"));
    const auto j = nlohmann::json::parse(slurp(dir / "summary.json"));
    REQUIRE(j["series"].size() == 6);
    for (const auto &s : j["series"])
        for (const char *k : {"q05", "q25", "q50", "q75", "q95"})
            CHECK(s["quantiles"].contains(k));
    CHECK(slurp(dir / "samples.csv").rfind("population,metric,drop,user,value\n", 0) == 0);

    const fs::path dir2 = scratch("run_open");
    r = invoke(with({"run", "--set", "isd_d=inf", "--set", "mode=open", "--seeds", "1..1", "--out", dir2.string()},
                 kSmall));
    CHECK(r.code == 0);
    const auto j2 = nlohmann::json::parse(slurp(dir2 / "summary.json"));
    CHECK(j2["config"]["isd_d_m"] == "inf");
    CHECK(j2["config"]["mode"] == "open");
    CHECK(j2["census"]["UAV"]["on_dedicated"] == 0);
}

TEST_CASE("CLI - sweep")
{
    const fs::path dir = scratch("sweep");
    const auto r = invoke(with({"sweep", "--preset", "closed-access", "--param", "isd_d_m", "--values",
                             "100,200,400", "--seeds", "1..2", "--out", dir.string()},
                            kSmall));
    REQUIRE(r.code == 0);
    const std::string csv = slurp(dir / "samples.csv");
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "isd_d_m,population,metric,drop,user,value");
    std::set<std::string> keys;
    while (std::getline(in, line))
        keys.insert(line.substr(0, line.find(',')));
    CHECK(keys == std::set<std::string>{"100", "200", "400"});
    for (const char *v : {"100", "200", "400"})
        CHECK(fs::exists(dir / ("summary_isd_d_m_" + std::string(v) + ".json")));
    const auto j = nlohmann::json::parse(slurp(dir / "summary.json"));
    CHECK(j["param"] == "isd_d_m");
    REQUIRE(j["runs"].size() == 3);
    CHECK(j["runs"][1]["summary"]["config"]["isd_d_m"] == "200");

    CHECK(invoke({"sweep", "--param", "no_such", "--values", "1"}).code == cli::kExitConfig);
    CHECK(invoke({"sweep", "--param", "alpha", "--values", "0.5,1.5"}).code == cli::kExitConfig);
    CHECK(invoke({"sweep", "--param", "alpha", "--values", ","}).code == cli::kExitConfig);
}

TEST_CASE("CLI - single-value sweep equals run")
{
    const fs::path a = scratch("eq_run"), b = scratch("eq_sweep");
    REQUIRE(invoke(with({"run", "--preset", "mu-mimo", "--seeds", "3..4", "--set", "n_u=2", "--out", a.string()},
                     kSmall))
                .code == 0);
    REQUIRE(invoke(with({"sweep", "--preset", "mu-mimo", "--seeds", "3..4", "--param", "n_u", "--values", "2",
                      "--out", b.string()},
                     kSmall))
                .code == 0);
    std::istringstream ra(slurp(a / "samples.csv")), rb(slurp(b / "samples.csv"));
    std::string la, lb;
    std::size_t n = 0;
    while (std::getline(ra, la))
    {
        REQUIRE(std::getline(rb, lb));
        REQUIRE(lb.substr(lb.find(',') + 1) == la);
        ++n;
    }
    CHECK_FALSE(std::getline(rb, lb));
    CHECK(n > 1);
    CHECK(slurp(a / "summary.json") == slurp(b / "summary_n_u_2.json"));
}

TEST_CASE("CLI - output independent of parallelism")
{
    const fs::path a = scratch("par1"), b = scratch("par8");
    const std::vector<std::string> base = {"run", "--preset", "open-access", "--seeds", "1..6"};
    REQUIRE(invoke(with(with(base, kSmall), {"--parallel", "1", "--out", a.string()})).code == 0);
    REQUIRE(invoke(with(with(base, kSmall), {"--parallel", "8", "--out", b.string()})).code == 0);
    CHECK(slurp(a / "samples.csv") == slurp(b / "samples.csv"));
    CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));
}
