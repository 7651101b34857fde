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

#include "coexsim/radio.hpp"

#include "coexsim/units.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coexsim {

double open_loop_power_dbm(const PowerControlParams &params, double coupling_loss_db)
{
    if (params.mode != PowerControlMode::OpenLoop)
        return params.pmax_dbm;
    return std::min(params.pmax_dbm, params.p0_dbm + params.alpha * coupling_loss_db);
}

namespace {

void fix_phase(Eigen::VectorXcd &v)
{
    Eigen::Index best = 0;
    double best_mag = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
    {
        const double m = std::abs(v(i));
        // Relative margin so round-off does not move the tie-break.
        if (m > best_mag * (1.0 + 1e-12))
        {
            best_mag = m;
            best = i;
        }
    }
    if (best_mag > 0.0)
        v *= std::conj(v(best)) / best_mag;
    v(best) = std::complex<double>(v(best).real(), 0.0);
}

} // namespace

EigenPair principal_eigenpair(const Eigen::MatrixXcd &r, double tol, int max_iterations)
{
    if (r.rows() != r.cols() || r.rows() == 0)
        throw std::invalid_argument("principal_eigenvector: matrix must be square and non-empty");
    const double scale = r.cwiseAbs().maxCoeff();
    if (!(scale > 0.0))
        throw std::invalid_argument("principal_eigenvector: zero matrix has no beam direction");

    EigenPair out;
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(r.rows()) / std::sqrt(static_cast<double>(r.rows()));
    Eigen::VectorXcd rv(r.rows());
    for (int it = 1; it <= max_iterations; ++it)
    {
        rv.noalias() = r * v;
        const double lambda = v.dot(rv).real();
        out.iterations = it;
        out.value = lambda;
        if (lambda > 0.0 && (rv - lambda * v).norm() <= tol * lambda)
            break;
        const double n = rv.norm();
        if (!(n > 0.0))
        {
            // Start vector lies in the null space; restart from a unit axis.
            v.setZero();
            v(it % r.rows()) = 1.0;
            continue;
        }
        v = rv / n;
    }
    fix_phase(v);
    out.vector = std::move(v);
    return out;
}

Eigen::VectorXcd principal_eigenvector(const Eigen::MatrixXcd &r, double tol)
{
    return principal_eigenpair(r, tol).vector;
}

Eigen::VectorXcd mmse_weights(const Eigen::VectorXcd &h_target, std::span<const ScheduledChannel> co_scheduled,
                              double other_cell_snr_sum)
{
    const Eigen::Index n = h_target.size();
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(n, n) * (1.0 + other_cell_snr_sum);
    for (const auto &k : co_scheduled)
    {
        if (k.h == nullptr || k.h->size() != n)
            throw std::invalid_argument("mmse_weights: channel dimension mismatch");
        a.noalias() += k.snr * (*k.h) * k.h->adjoint();
    }
    return a.ldlt().solve(h_target);
}

LinkBudget sinr(const Contribution &target, std::span<const Contribution> in_cell,
                std::span<const Contribution> out_of_cell, double w_norm2, double noise_psd_w_per_hz,
                double bandwidth_hz)
{
    LinkBudget b;
    b.p_rx_w = target.received_w();
    for (const auto &c : in_cell)
        b.interference_w += c.received_w();
    for (const auto &c : out_of_cell)
        b.interference_w += c.received_w();
    b.noise_w = noise_psd_w_per_hz * bandwidth_hz * w_norm2;
    b.sinr = b.p_rx_w / (b.interference_w + b.noise_w);
    b.inr = b.interference_w / b.noise_w;
    return b;
}

double noise_psd_w_per_hz(double n0_dbm_per_hz, double noise_figure_db)
{
    return dbm_to_watt(n0_dbm_per_hz + noise_figure_db);
}

double average_rate(double sinr_linear, double bandwidth_hz, int n_active, int n_associated)
{
    if (n_associated < 1 || n_active < 0 || n_active > n_associated)
        throw std::invalid_argument("average_rate: need 0 <= n_active <= n_associated and n_associated >= 1");
    return static_cast<double>(n_active) / n_associated * bandwidth_hz * std::log2(1.0 + sinr_linear);
}

} // namespace coexsim
