// SPDX-License-Identifier: Apache-2.0
//
// densearray - simulation library for densely spaced antenna arrays with 1-bit converters
// Copyright (C) 2026 densearray contributors
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

#ifndef DENSEARRAY_DOWNLINK_HPP
#define DENSEARRAY_DOWNLINK_HPP

#include <armadillo>

#include "densearray/array_model.hpp"

namespace densearray {

// Downlink configuration. Channels are users x elements throughout this
// module (one row per user).
struct DownlinkConfig {
    double total_power = 0.0;   // eps, available transmit power
    double noise_density = 1.0; // N0
    double noise_figure = 2.0;  // N_F >= 1 (receiver chains of the users)
    double dither_power = 0.0;  // sigma_d^2 >= 0
    double delta = 0.01;        // eigenvalue threshold of the null-space projector
};

// Zero-forcing precoder F = sqrt(eps / tr((H H^H)^-1)) H^H (H H^H)^-1.
// H F is then a scaled identity and ||F||_F^2 = eps.
struct ZfPrecoder {
    arma::cx_mat weights; // F, elements x users
    double zf_trace;      // tr((H H^H)^-1)
};

ZfPrecoder zf_precoder(const arma::cx_mat &channels, double total_power);

// tr(C_z B): power actually radiated by an excitation with covariance C_z.
// At most tr(C_z) by passivity; the remainder stays reactive at the array.
double radiated_power(const arma::cx_mat &excitation_cov, const CouplingMatrix &coupling);

// log2(1 + (eps / (N0 N_F)) / tr((H H^H)^-1)), identical for every user
// under the symmetric zero-forcing precoder.
double downlink_ideal_rate(const arma::cx_mat &channels, const DownlinkConfig &config);

// Covariance of the dithered transmit signal z = F x + (U/||U||_F) v_d:
//   C_z = F F^H + (sigma_d^2 / ||U||_F^2) U U^H,  rescale = diag(C_z).
struct TransmitCovariance {
    arma::cx_mat cov;  // C_z
    arma::vec rescale; // D
};

TransmitCovariance dithered_transmit_covariance(const arma::cx_mat &precoder_weights,
                                                const arma::cx_mat &projector,
                                                double dither_power);

// Power-equalization factor alpha so the one-bit transmitter radiates the
// same power as the ideal one.
//   exact: alpha = P_R / tr(arcsine(C_z, D) B)
//   uqn:   alpha = P_R / ((2/pi) P_R + (1 - 2/pi) * mean(diag B) * tr(C_z)),
// where mean(diag B) realizes (a/lambda)^2 * gamma.
enum class AlphaMode { exact, uqn };

double alpha_power_equalizer(const TransmitCovariance &transmit, const CouplingMatrix &coupling,
                             double radiated_ideal, AlphaMode mode);

// One-bit DAC rate lower bound variants.
//   exact            - arcsine distortion plus the dither that leaks through
//                      the channel (keeps the bound a true lower bound)
//   exact_no_leakage - arcsine distortion only, dither treated as perfectly
//                      non-radiating (diagnostic)
//   uqn              - closed form with isotropic distortion radiation
enum class DownlinkBound { exact, exact_no_leakage, uqn };

// Per-point cache of the dither direction: the projector, its Gram matrix
// and Frobenius norm, plus the leakage figure of merit.
struct DitherOperator {
    arma::cx_mat projector; // U
    arma::cx_mat gram;      // U U^H
    double fro_sq = 0.0;    // ||U||_F^2
    double leakage = 0.0;   // tr(U^H B U) / tr(U^H U), 0 when U vanishes
};

DitherOperator make_dither_operator(const CouplingMatrix &coupling, double delta);

// Guaranteed loss of the one-bit transmitter in the dense-array limit under
// equal radiated power: none.
double downlink_asymptotic_loss();

struct PowerRatios {
    double ideal;   // P_R / eps
    double one_bit; // P_R / (alpha (eps + sigma_d^2))
};

PowerRatios power_ratio_diagnostic(double radiated, double alpha, double total_power,
                                   double dither_power);

// Everything the sweep needs from one channel realization. All variants
// share the same precoder and transmit covariance.
struct DownlinkEvaluation {
    double ideal_rate = 0.0;
    arma::vec one_bit_exact;            // per user, dither leakage included
    arma::vec one_bit_exact_no_leakage; // per user, diagnostic
    double one_bit_uqn = 0.0;
    double alpha_exact = 0.0;
    double alpha_uqn = 0.0;
    double radiated_ideal = 0.0; // P_R
    double zf_trace = 0.0;
    PowerRatios ratios_exact{0.0, 0.0}; // computed with alpha_exact
    double rescale_spread = 0.0;        // max |D_i - mean D| / mean D
};

DownlinkEvaluation evaluate_downlink(const arma::cx_mat &channels, const CouplingMatrix &coupling,
                                     const DownlinkConfig &config, const DitherOperator &dither);

} // namespace densearray

#endif
