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

#include "coexsim/random.hpp"

#include "coexsim/errors.hpp"
#include "coexsim/units.hpp"

#include <cmath>
#include <limits>

namespace coexsim {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng Rng::derive(std::uint64_t seed, std::initializer_list<std::uint64_t> keys)
{
    std::uint64_t state = mix64(seed);
    for (std::uint64_t k : keys)
        state = mix64(state ^ mix64(k + 0x632be59bd9b4e019ULL));
    return Rng(state);
}

Rng Rng::derive(std::uint64_t seed, Stream stream, std::initializer_list<std::uint64_t> keys)
{
    std::uint64_t state = mix64(seed ^ mix64(static_cast<std::uint64_t>(stream)));
    for (std::uint64_t k : keys)
        state = mix64(state ^ mix64(k + 0x632be59bd9b4e019ULL));
    return Rng(state);
}

double Rng::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::index(std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("Rng::index: empty range");
    // Rejection on the top of the range removes modulo bias.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do
        x = engine_();
    while (x >= limit);
    return x % n;
}

double Rng::normal(double mean, double sigma)
{
    // Box-Muller, one variate per call so draw counts stay predictable.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return mean + sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

double Rng::exponential(double mean)
{
    return -mean * std::log(1.0 - uniform());
}

std::uint64_t Rng::poisson(double mean)
{
    if (!(mean >= 0.0) || !std::isfinite(mean))
        throw ConfigError("", "Poisson mean must be finite and non-negative");
    // Knuth's product method on chunks of bounded mean keeps exp(-chunk) well
    // away from underflow for large areas.
    constexpr double kChunk = 64.0;
    std::uint64_t total = 0;
    double remaining = mean;
    while (remaining > 0.0)
    {
        const double chunk = remaining > kChunk ? kChunk : remaining;
        remaining -= chunk;
        const double limit = std::exp(-chunk);
        double product = uniform();
        while (product > limit)
        {
            ++total;
            product *= uniform();
        }
    }
    return total;
}

} // namespace coexsim
