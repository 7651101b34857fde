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

#include <Eigen/Core>

#include <span>

namespace coexsim {

enum class PowerControlMode
{
    OpenLoop,
    MaxPower,
    Off,
};

struct PowerControlParams
{
    double p0_dbm = -82.0;
    double alpha = 0.8;
    double pmax_dbm = 23.0;
    PowerControlMode mode = PowerControlMode::OpenLoop;
};

// Fractional open-loop power: min(pmax, p0 + alpha * coupling loss).
// MaxPower and Off both transmit at pmax.
double open_loop_power_dbm(const PowerControlParams &params, double coupling_loss_db);

// Dominant eigenvector of a Hermitian PSD matrix by power iteration from the
// all-ones start. Converged when |Rv - lambda v| <= tol lambda. The phase is
// fixed so the largest-magnitude entry (lowest index on ties) is real positive.
// Throws std::invalid_argument for a zero matrix.
struct EigenPair
{
    Eigen::VectorXcd vector;
    double value = 0.0;
    int iterations = 0;
};

EigenPair principal_eigenpair(const Eigen::MatrixXcd &r, double tol = 1e-9, int max_iterations = 20000);
Eigen::VectorXcd principal_eigenvector(const Eigen::MatrixXcd &r, double tol = 1e-9);

// Effective channel of one co-scheduled user with its per-antenna SNR.
struct ScheduledChannel
{
    const Eigen::VectorXcd *h = nullptr;
    double snr = 0.0;
};

// w = (sum_k snr_k h_k h_k^H + (1 + other_cell_snr_sum) I)^-1 h_target.
// `co_scheduled` includes the target itself. Throws std::invalid_argument on
// dimension mismatch.
Eigen::VectorXcd mmse_weights(const Eigen::VectorXcd &h_target, std::span<const ScheduledChannel> co_scheduled,
                              double other_cell_snr_sum);

// Transmit power (W), large-scale gain, and combining gain |w^H h|^2 of one
// transmitter as seen by the victim's combiner.
struct Contribution
{
    double p_tx_w = 0.0;
    double gamma = 0.0;
    double g = 0.0;

    double received_w() const { return p_tx_w * g * gamma; }
};

struct LinkBudget
{
    double p_rx_w = 0.0;
    double interference_w = 0.0;
    double noise_w = 0.0;
    double sinr = 0.0;
    double inr = 0.0;
};

// `noise_psd_w_per_hz` times bandwidth is N0 B; `w_norm2` is |w|^2.
LinkBudget sinr(const Contribution &target, std::span<const Contribution> in_cell,
                std::span<const Contribution> out_of_cell, double w_norm2, double noise_psd_w_per_hz,
                double bandwidth_hz);

// Thermal noise PSD in W/Hz from a dBm/Hz density plus a receiver noise figure.
double noise_psd_w_per_hz(double n0_dbm_per_hz, double noise_figure_db);

// (n_active / n_associated) B log2(1 + sinr).
double average_rate(double sinr_linear, double bandwidth_hz, int n_active, int n_associated);

} // namespace coexsim
