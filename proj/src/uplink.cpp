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

#include "densearray/uplink.hpp"

#include <cmath>

#include "densearray/quantization.hpp"

namespace densearray {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoOverPi = 0.63661977236758134308;

arma::cx_mat hermitize(const arma::cx_mat &m)
{
    return 0.5 * (m + m.t());
}

void check_link(const arma::cx_mat &channels, const CouplingMatrix &coupling,
                const UplinkConfig &config)
{
    if (channels.n_rows != coupling.size())
        throw std::invalid_argument("uplink: channel rows must match the array size");
    if (channels.n_cols == 0 || channels.n_cols > channels.n_rows)
        throw std::invalid_argument("uplink: need 1 <= users <= elements");
    if (config.user_powers.n_elem != channels.n_cols)
        throw std::invalid_argument("uplink: one power entry per user required");
    if (config.user_powers.min() <= 0.0)
        throw std::invalid_argument("uplink: user powers must be positive");
}

// log2(1 + eps_k / [G^-1]_kk) for a Hermitian positive definite G.
arma::vec rates_from_information_matrix(const arma::cx_mat &info, const arma::vec &powers,
                                        const char *what)
{
    arma::cx_mat inverse;
    if (!arma::inv_sympd(inverse, hermitize(info)))
        throw model_error(std::string("uplink: rank-deficient ") + what +
                          " (channel realization is degenerate)");
    arma::vec rates(powers.n_elem);
    for (arma::uword k = 0; k < powers.n_elem; ++k)
        rates(k) = std::log2(1.0 + powers(k) / inverse(k, k).real());
    return rates;
}

arma::cx_mat solve_noise(const arma::cx_mat &noise_cov, const arma::cx_mat &rhs,
                         const char *what)
{
    arma::cx_mat solved;
    if (!arma::solve(solved, noise_cov, rhs,
                     arma::solve_opts::likely_sympd + arma::solve_opts::no_approx))
        throw model_error(std::string("uplink: ") + what + " covariance is singular");
    return solved;
}

} // namespace

arma::cx_mat total_noise_covariance(const CouplingMatrix &coupling, const UplinkConfig &config)
{
    if (!(config.noise_figure >= 1.0))
        throw std::invalid_argument("uplink: noise figure must be at least 1");
    if (!(config.noise_density > 0.0))
        throw std::invalid_argument("uplink: noise density must be positive");

    const arma::uword m = coupling.size();
    arma::cx_mat out = config.noise_density * coupling.entries();
    out.diag() += (config.noise_figure - 1.0) * config.noise_density;
    return out;
}

arma::vec uplink_ideal_rates(const arma::cx_mat &channels, const CouplingMatrix &coupling,
                             const UplinkConfig &config)
{
    check_link(channels, coupling, config);
    const arma::cx_mat noise = total_noise_covariance(coupling, config);
    const arma::cx_mat info = channels.t() * solve_noise(noise, channels, "total noise");
    return rates_from_information_matrix(info, config.user_powers, "H^H C^-1 H");
}

arma::vec uplink_one_bit_rates(const arma::cx_mat &channels, const CouplingMatrix &coupling,
                               const UplinkConfig &config, UplinkBound bound)
{
    check_link(channels, coupling, config);
    const arma::cx_mat noise = total_noise_covariance(coupling, config);

    // C_y = H P H^H + C_n and its diagonal rescaling
    const arma::cx_mat powered = channels * arma::diagmat(arma::sqrt(config.user_powers));
    const arma::cx_mat signal_cov = hermitize(powered * powered.t());
    const arma::cx_mat input_cov = signal_cov + noise;
    const arma::vec rescale = arma::real(input_cov.diag());

    arma::cx_mat effective; // Bussgang effective noise, up to the 2/pi gain
    double gain = kTwoOverPi;
    switch (bound)
    {
    case UplinkBound::exact:
        effective = arcsine_covariance(input_cov, rescale) - kTwoOverPi * signal_cov;
        break;
    case UplinkBound::uqn:
        // (1 - 2/pi) D + (2/pi) C_n, folded so that the 2/pi gain cancels:
        // (2/pi) H^H [(2/pi)(C_n + (pi/2 - 1) D)]^-1 H = H^H (C_n + (pi/2-1) D)^-1 H
        effective = noise;
        effective.diag() += arma::conv_to<arma::cx_vec>::from((kPi / 2.0 - 1.0) * rescale);
        gain = 1.0;
        break;
    case UplinkBound::uqn_isotropic:
    {
        const arma::vec iso =
            (config.noise_density + arma::accu(config.user_powers)) *
                arma::real(coupling.entries().diag()) +
            config.noise_density * (config.noise_figure - 1.0);
        effective = noise;
        effective.diag() += arma::conv_to<arma::cx_vec>::from((kPi / 2.0 - 1.0) * iso);
        gain = 1.0;
        break;
    }
    }

    const arma::cx_mat info =
        gain * (channels.t() * solve_noise(effective, channels, "quantized effective noise"));
    return rates_from_information_matrix(info, config.user_powers, "quantized information matrix");
}

double uplink_asymptotic_loss(double noise_figure)
{
    if (!(noise_figure >= 1.0))
        throw std::invalid_argument("uplink: noise figure must be at least 1");
    return noise_figure / (1.0 + (kPi / 2.0) * (noise_figure - 1.0));
}

RateReport uplink_rate_report(const ChannelSet &channels, const CouplingMatrix &coupling,
                              const UplinkConfig &config, double spacing_over_lambda)
{
    RateReport report;
    report.ideal = uplink_ideal_rates(channels.coefficients, coupling, config);
    report.one_bit_exact =
        uplink_one_bit_rates(channels.coefficients, coupling, config, UplinkBound::exact);
    report.one_bit_uqn =
        uplink_one_bit_rates(channels.coefficients, coupling, config, UplinkBound::uqn);
    report.elements = coupling.size();
    report.spacing_over_lambda = spacing_over_lambda;
    report.seed = channels.seed;
    return report;
}

} // namespace densearray
