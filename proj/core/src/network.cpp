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

#include "coexsim/network.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace coexsim {

std::vector<Cell> build_cells(std::span<const BaseStation> base_stations)
{
    std::vector<Cell> cells;
    cells.reserve(base_stations.size() * 3);
    for (std::size_t b = 0; b < base_stations.size(); ++b)
        for (int s = 0; s < 3; ++s)
            cells.push_back({static_cast<int>(cells.size()), static_cast<int>(b), s, base_stations[b].tier});
    return cells;
}

bool admissible(UserKind kind, Tier tier, AccessPolicy policy)
{
    if (kind == UserKind::Ue)
        return tier == Tier::Standard;
    switch (policy)
    {
    case AccessPolicy::SingleMno:
        return tier == Tier::Standard;
    case AccessPolicy::ClosedAccess:
        return tier == Tier::Dedicated;
    case AccessPolicy::OpenAccess:
        return true;
    }
    return false;
}

std::vector<int> candidate_cells(UserKind kind, std::span<const Cell> cells, AccessPolicy policy)
{
    std::vector<int> out;
    for (const auto &c : cells)
        if (admissible(kind, c.tier, policy))
            out.push_back(c.id);
    return out;
}

Association associate(std::span<const UserNode> users, std::span<const Cell> cells, const Eigen::MatrixXd &metric,
                      AccessPolicy policy)
{
    if (metric.rows() != static_cast<Eigen::Index>(users.size()) ||
        metric.cols() != static_cast<Eigen::Index>(cells.size()))
        throw std::invalid_argument("associate: metric table does not match users x cells");

    Association a;
    a.serving_cell.assign(users.size(), Association::kOutage);
    a.cell_users.assign(cells.size(), {});
    for (std::size_t u = 0; u < users.size(); ++u)
    {
        double best = 0.0;
        int best_cell = Association::kOutage;
        for (std::size_t c = 0; c < cells.size(); ++c)
        {
            if (!admissible(users[u].kind, cells[c].tier, policy))
                continue;
            const double m = metric(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(c));
            if (m > best)
            {
                best = m;
                best_cell = static_cast<int>(c);
            }
        }
        a.serving_cell[u] = best_cell;
        if (best_cell != Association::kOutage)
            a.cell_users[static_cast<std::size_t>(best_cell)].push_back(static_cast<int>(u));
    }
    return a;
}

Schedule build_schedule(const Association &association, int n_u, int n_slots, Rng &rng)
{
    if (n_u < 1)
        throw std::invalid_argument("build_schedule: n_u must be at least 1");
    Schedule s;
    const std::size_t n_cells = association.cell_users.size();
    s.slots.assign(static_cast<std::size_t>(std::max(n_slots, 0)), std::vector<std::vector<int>>(n_cells));
    for (std::size_t c = 0; c < n_cells; ++c)
    {
        std::vector<int> order = association.cell_users[c];
        if (order.empty())
            continue;
        rng.shuffle(std::span<int>(order));
        const std::size_t n_c = order.size();
        const std::size_t per_slot = std::min<std::size_t>(static_cast<std::size_t>(n_u), n_c);
        std::size_t cursor = 0;
        for (auto &slot : s.slots)
        {
            auto &active = slot[c];
            for (std::size_t i = 0; i < per_slot; ++i)
                active.push_back(order[(cursor + i) % n_c]);
            cursor = (cursor + per_slot) % n_c;
        }
    }
    return s;
}

std::vector<SlotOutcome> evaluate_slot(const SlotInputs &in)
{
    const auto &active = *in.active;
    const LinkTable &links = *in.links;
    const std::size_t n_cells = active.size();
    const double noise_w = in.noise_psd_w_per_hz * in.bandwidth_hz;

    auto link = [&](int user, std::size_t cell) -> const EffectiveLink & {
        const auto &l = links.at(static_cast<std::size_t>(user), cell);
        if (l.h.size() == 0)
            throw std::logic_error("evaluate_slot: missing link for user " + std::to_string(user) + " at cell " +
                                   std::to_string(cell));
        return l;
    };
    auto snr_at = [&](int user, std::size_t cell) {
        return in.p_tx_w[static_cast<std::size_t>(user)] * link(user, cell).gain / noise_w;
    };

    std::vector<SlotOutcome> out;
    std::vector<ScheduledChannel> co;
    std::vector<Contribution> in_cell;
    std::vector<Contribution> out_cell;
    for (std::size_t l = 0; l < n_cells; ++l)
    {
        if (active[l].empty())
            continue;

        // Out-of-cell users are seen as white noise at this cell.
        double other_snr = 0.0;
        for (std::size_t n = 0; n < n_cells; ++n)
            if (n != l)
                for (int k : active[n])
                    other_snr += snr_at(k, l);

        co.clear();
        for (int k : active[l])
            co.push_back({&link(k, l).h, snr_at(k, l)});

        for (int u : active[l])
        {
            const auto &target = link(u, l);
            const Eigen::VectorXcd w = mmse_weights(target.h, co, other_snr);
            auto contribution = [&](int k) {
                const auto &lk = link(k, l);
                return Contribution{in.p_tx_w[static_cast<std::size_t>(k)], lk.gain, std::norm(w.dot(lk.h))};
            };
            in_cell.clear();
            out_cell.clear();
            for (int k : active[l])
                if (k != u)
                    in_cell.push_back(contribution(k));
            for (std::size_t n = 0; n < n_cells; ++n)
                if (n != l)
                    for (int k : active[n])
                        out_cell.push_back(contribution(k));
            const auto b = sinr(contribution(u), in_cell, out_cell, w.squaredNorm(), in.noise_psd_w_per_hz,
                                in.bandwidth_hz);
            out.push_back({u, static_cast<int>(l), b.sinr, b.inr});
        }
    }
    return out;
}

} // namespace coexsim
