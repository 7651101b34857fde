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
#include "coexsim/radio.hpp"
#include "coexsim/sim.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace coexsim;

namespace {

Eigen::VectorXcd random_vector(std::mt19937_64 &eng, int n)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i)
        v(i) = {u(eng), u(eng)};
    return v;
}

void BM_PrincipalEigenvector16(benchmark::State &state)
{
    std::mt19937_64 eng(1);
    Eigen::MatrixXcd x(16, 16);
    for (int c = 0; c < 16; ++c)
        x.col(c) = random_vector(eng, 16);
    const Eigen::MatrixXcd r = x * x.adjoint();
    for (auto _ : state)
        benchmark::DoNotOptimize(principal_eigenvector(r));
}
BENCHMARK(BM_PrincipalEigenvector16);

void BM_Mmse64(benchmark::State &state)
{
    std::mt19937_64 eng(2);
    const int users = static_cast<int>(state.range(0));
    std::vector<Eigen::VectorXcd> hs;
    for (int k = 0; k < users; ++k)
        hs.push_back(random_vector(eng, 64));
    std::vector<ScheduledChannel> co;
    for (const auto &h : hs)
        co.push_back({&h, 10.0});
    for (auto _ : state)
        benchmark::DoNotOptimize(mmse_weights(hs[0], co, 0.5));
}
BENCHMARK(BM_Mmse64)->Arg(1)->Arg(4);

void BM_DeskDrop(benchmark::State &state)
{
    ScenarioConfig c;
    apply_settings(c, find_preset("table1-config2").settings);
    apply_settings(c, find_preset("desk").settings);
    const Models models = build_models(c.resolved());
    std::uint64_t seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_drop(models, seed++));
}
BENCHMARK(BM_DeskDrop)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
