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

#include "coexsim/geometry.hpp"
#include "coexsim/radio.hpp"
#include "coexsim/random.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace coexsim {

enum class AccessPolicy
{
    SingleMno,
    ClosedAccess,
    OpenAccess,
};

// One sector of one base station.
struct Cell
{
    int id = 0;
    int bs_index = 0;
    int sector = 0;
    Tier tier = Tier::Standard;
};

// Cells are numbered bs_index * 3 + sector in base-station order.
std::vector<Cell> build_cells(std::span<const BaseStation> base_stations);

// Cells a user may attach to. UEs only use the standard tier; UAVs use the
// standard tier (single MNO), the dedicated tier (closed access) or both.
std::vector<int> candidate_cells(UserKind kind, std::span<const Cell> cells, AccessPolicy policy);

bool admissible(UserKind kind, Tier tier, AccessPolicy policy);

struct Association
{
    static constexpr int kOutage = -1;

    std::vector<int> serving_cell;             // per user, kOutage when unattached
    std::vector<std::vector<int>> cell_users;  // per cell, ascending user index

    bool in_outage(std::size_t user) const { return serving_cell[user] == kOutage; }
    int associated_count(std::size_t cell) const { return static_cast<int>(cell_users[cell].size()); }
};

// metric(u, c) is the long-term received power of user u at cell c (W); values
// <= 0 mark unusable links. Each user takes the admissible argmax, with ties
// going to the lowest cell id. Users without a usable admissible cell are in
// outage.
Association associate(std::span<const UserNode> users, std::span<const Cell> cells, const Eigen::MatrixXd &metric,
                      AccessPolicy policy);

struct Schedule
{
    // slots[s][c] lists the users of cell c active in slot s.
    std::vector<std::vector<std::vector<int>>> slots;

    std::size_t slot_count() const { return slots.size(); }
};

// Random round-robin per cell: a random permutation of the associated users is
// packed into slots of min(n_u, N_c) users, cycling through the permutation.
Schedule build_schedule(const Association &association, int n_u, int n_slots, Rng &rng);

// Effective channel of user k at cell l after k's own transmit beamforming.
struct EffectiveLink
{
    Eigen::VectorXcd h;  // |h|^2 = N_rx, empty = not computed
    double gain = 0.0;   // linear large-scale gain including the transmit beam
};

class LinkTable
{
public:
    LinkTable(std::size_t n_users, std::size_t n_cells) : n_cells_(n_cells), links_(n_users * n_cells) {}

    EffectiveLink &at(std::size_t user, std::size_t cell) { return links_[user * n_cells_ + cell]; }
    const EffectiveLink &at(std::size_t user, std::size_t cell) const { return links_[user * n_cells_ + cell]; }
    std::size_t cells() const { return n_cells_; }
    std::size_t users() const { return n_cells_ == 0 ? 0 : links_.size() / n_cells_; }

private:
    std::size_t n_cells_;
    std::vector<EffectiveLink> links_;
};

struct SlotOutcome
{
    int user = 0;
    int cell = 0;
    double sinr = 0.0;
    double inr = 0.0;
};

struct SlotInputs
{
    const std::vector<std::vector<int>> *active = nullptr;  // per cell
    const LinkTable *links = nullptr;
    std::span<const double> p_tx_w;  // per user
    double noise_psd_w_per_hz = 0.0;
    double bandwidth_hz = 0.0;
};

// MMSE combining per cell from co-scheduled channels plus a white out-of-cell
// term, then SINR/INR against every other active user in the network. Results
// are ordered by cell, then by position in the cell's active list. Throws
// std::logic_error when a needed link was never computed.
std::vector<SlotOutcome> evaluate_slot(const SlotInputs &inputs);

} // namespace coexsim
