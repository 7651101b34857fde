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

#include "coexsim/errors.hpp"
#include "coexsim/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

// Covered tests:
// - Keyed substreams are reproducible and distinct
// - Uniform range and moments
// - Normal / exponential / Poisson moments
// - Unbiased index and permutation shuffle

using namespace coexsim;

TEST_CASE("Random - keyed substreams")
{
    Rng a = Rng::derive(7, Stream::Channel, {3, 4});
    Rng b = Rng::derive(7, Stream::Channel, {3, 4});
    for (int i = 0; i < 100; ++i)
        CHECK(a.next() == b.next());

    CHECK(Rng::derive(7, Stream::Channel, {3, 4}).next() != Rng::derive(7, Stream::Channel, {4, 3}).next());
    CHECK(Rng::derive(7, Stream::Channel, {3}).next() != Rng::derive(7, Stream::Users, {3}).next());
    CHECK(Rng::derive(7, Stream::Users).next() != Rng::derive(8, Stream::Users).next());
}

TEST_CASE("Random - uniform")
{
    Rng rng(11);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sum2 += u * u;
    }
    const double mean = sum / n;
    CHECK(std::abs(mean - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
    CHECK(std::abs(sum2 / n - mean * mean - 1.0 / 12.0) < 2e-3);

    for (int i = 0; i < 1000; ++i)
    {
        const double v = rng.uniform(-3.0, 5.0);
        REQUIRE(v >= -3.0);
        REQUIRE(v < 5.0);
    }
}

TEST_CASE("Random - continuous distributions")
{
    Rng rng(5);
    const int n = 200000;
    double s = 0.0, s2 = 0.0, e = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double x = rng.normal(2.0, 3.0);
        s += x;
        s2 += x * x;
        const double y = rng.exponential(6.0);
        REQUIRE(y >= 0.0);
        e += y;
    }
    const double mean = s / n;
    CHECK(std::abs(mean - 2.0) < 4.0 * 3.0 / std::sqrt(n));
    CHECK(std::abs(std::sqrt(s2 / n - mean * mean) - 3.0) < 0.03);
    CHECK(std::abs(e / n - 6.0) < 4.0 * 6.0 / std::sqrt(n));
}

TEST_CASE("Random - Poisson")
{
    for (double mean : {0.0, 0.5, 6.25, 25.0, 150.0})
    {
        Rng rng(static_cast<std::uint64_t>(mean * 100) + 1);
        const int n = 20000;
        double s = 0.0, s2 = 0.0;
        for (int i = 0; i < n; ++i)
        {
            const double k = static_cast<double>(rng.poisson(mean));
            s += k;
            s2 += k * k;
        }
        const double m = s / n;
        CHECK(std::abs(m - mean) <= 4.0 * std::sqrt(mean / n) + 1e-12);
        if (mean > 0)
            CHECK(std::abs((s2 / n - m * m) / mean - 1.0) < 0.1);
    }
    Rng rng(1);
    CHECK_THROWS_AS(rng.poisson(std::nan("")), ConfigError);
    CHECK_THROWS_AS(rng.poisson(-1.0), ConfigError);
}

TEST_CASE("Random - index and shuffle")
{
    Rng rng(3);
    std::vector<int> counts(7, 0);
    const int n = 70000;
    for (int i = 0; i < n; ++i)
        ++counts[rng.index(7)];
    for (int c : counts)
        CHECK(std::abs(c - n / 7) < 4.0 * std::sqrt(n / 7.0));
    CHECK_THROWS(rng.index(0));

    std::vector<int> v(50);
    std::iota(v.begin(), v.end(), 0);
    std::vector<int> w = v;
    rng.shuffle(std::span<int>(w));
    CHECK(w != v);
    std::sort(w.begin(), w.end());
    CHECK(w == v);
}
