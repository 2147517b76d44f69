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

#ifndef DENSEARRAY_UPLINK_HPP
#define DENSEARRAY_UPLINK_HPP

#include <armadillo>
#include <cstdint>

#include "densearray/array_model.hpp"
#include "densearray/channel.hpp"

namespace densearray {

// Uplink link-level configuration. The noise density N0 only ever enters as
// a ratio against the user powers, so it stays at 1 unless a units check
// needs otherwise.
struct UplinkConfig {
    arma::vec user_powers;      // eps_k, linear, in units of noise_density
    double noise_density = 1.0; // N0
    double noise_figure = 2.0;  // N_F >= 1
};

// Which lower bound the one-bit rate evaluation uses.
//   exact          - full arcsine-law distortion covariance
//   uqn            - diagonal distortion (1 - 2/pi) D with D = diag(C_y)
//   uqn_isotropic  - uqn with D replaced by its many-isotropic-users
//                    closed form (N0 + sum_k eps_k) diag(B) + N0 (N_F - 1);
//                    diagnostic for the closed-form rate expression
enum class UplinkBound { exact, uqn, uqn_isotropic };

// Total receive noise covariance N0 B + (N_F - 1) N0 I. Passivity of B makes
// its largest eigenvalue at most N_F N0.
arma::cx_mat total_noise_covariance(const CouplingMatrix &coupling, const UplinkConfig &config);

// Per-user achievable rates of the zero-forcing receiver with ideal ADCs:
//   R_k = log2(1 + eps_k / [(H^H C_n^-1 H)^-1]_kk).
// channels is elements x users.
arma::vec uplink_ideal_rates(const arma::cx_mat &channels, const CouplingMatrix &coupling,
                             const UplinkConfig &config);

// Per-user lower bounds with one-bit ADCs, obtained by treating the
// quantization distortion as additive noise:
//   R_k = log2(1 + eps_k / [((2/pi) H^H C'^-1 H)^-1]_kk),
// where C' is the Bussgang effective noise covariance selected by `bound`.
arma::vec uplink_one_bit_rates(const arma::cx_mat &channels, const CouplingMatrix &coupling,
                               const UplinkConfig &config, UplinkBound bound);

// Dense-array limit of the one-bit SNR loss: N_F / (1 + (pi/2)(N_F - 1)).
double uplink_asymptotic_loss(double noise_figure);

// Per-user rates of all uplink variants for one channel realization.
struct RateReport {
    arma::vec ideal;
    arma::vec one_bit_exact;
    arma::vec one_bit_uqn;
    arma::uword elements = 0;
    double spacing_over_lambda = 0.0;
    std::uint64_t seed = 0;
};

RateReport uplink_rate_report(const ChannelSet &channels, const CouplingMatrix &coupling,
                              const UplinkConfig &config, double spacing_over_lambda);

} // namespace densearray

#endif
