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

#include <stdexcept>
#include <string>

namespace coexsim {

// Invalid scenario or model parameters. `field()` names the offending
// configuration key when one applies.
class ConfigError : public std::invalid_argument
{
public:
    ConfigError(std::string field, const std::string &message)
        : std::invalid_argument(field.empty() ? message : field + ": " + message), field_(std::move(field))
    {
    }

    const std::string &field() const noexcept { return field_; }

private:
    std::string field_;
};

// Placement constraints could not be met within the retry budget.
class DeploymentError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Malformed antenna pattern or lookup table input.
class PatternError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace coexsim
