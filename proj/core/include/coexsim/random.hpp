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

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace coexsim {

// Stream tags used to carve independent substreams out of one drop seed.
enum class Stream : std::uint64_t
{
    StandardBs = 1,
    DedicatedBs = 2,
    Users = 3,
    Channel = 4,
    Schedule = 5,
    Bootstrap = 6,
};

// Seeded random source with platform-independent transforms.
//
// std::mt19937_64 is fully specified by the standard, but the std::*_distribution
// adaptors are not, so every transform used by the simulator is written out here.
// That keeps a (seed, config) pair bit-identical across standard libraries.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Counter-style keyed substream: the result depends only on the seed and keys.
    static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> keys);
    static Rng derive(std::uint64_t seed, Stream stream, std::initializer_list<std::uint64_t> keys = {});

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Unbiased integer on [0, n). n must be positive.
    std::uint64_t index(std::uint64_t n);

    double normal(double mean, double sigma);
    double exponential(double mean);
    std::uint64_t poisson(double mean);

    template <typename T>
    void shuffle(std::span<T> items)
    {
        for (std::size_t i = items.size(); i > 1; --i)
        {
            std::size_t j = static_cast<std::size_t>(index(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

std::uint64_t mix64(std::uint64_t x);

} // namespace coexsim
