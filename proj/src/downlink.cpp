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

#include "densearray/downlink.hpp"

#include <cmath>

#include "densearray/quantization.hpp"

namespace densearray {

namespace {

constexpr double kTwoOverPi = 0.63661977236758134308;

arma::cx_mat hermitize(const arma::cx_mat &m)
{
    return 0.5 * (m + m.t());
}

// tr(A B) for Hermitian A, B without forming the product.
double trace_product(const arma::cx_mat &a, const arma::cx_mat &b)
{
    return std::real(arma::accu(a % arma::strans(b)));
}

void check_config(const DownlinkConfig &config)
{
    if (!(config.total_power > 0.0))
        throw std::invalid_argument("downlink: total power must be positive");
    if (!(config.noise_density > 0.0))
        throw std::invalid_argument("downlink: noise density must be positive");
    if (!(config.noise_figure >= 1.0))
        throw std::invalid_argument("downlink: noise figure must be at least 1");
    if (config.dither_power < 0.0)
        throw std::invalid_argument("downlink: dither power must be non-negative");
    if (!(config.delta > 0.0))
        throw std::invalid_argument("downlink: delta must be positive");
}

double mean_coupling_diagonal(const CouplingMatrix &coupling)
{
    return arma::mean(arma::real(coupling.entries().diag()));
}

} // namespace

ZfPrecoder zf_precoder(const arma::cx_mat &channels, double total_power)
{
    if (channels.n_rows == 0 || channels.n_rows > channels.n_cols)
        throw std::invalid_argument("zero-forcing precoder: need 1 <= users <= elements "
                                    "(channels are users x elements)");
    if (!(total_power > 0.0))
        throw std::invalid_argument("zero-forcing precoder: total power must be positive");

    arma::cx_mat gram_inv;
    if (!arma::inv_sympd(gram_inv, hermitize(channels * channels.t())))
        throw model_error("zero-forcing precoder: rank-deficient channel matrix");

    const double zf_trace = std::real(arma::trace(gram_inv));
    arma::cx_mat weights =
        std::sqrt(total_power / zf_trace) * (channels.t() * gram_inv);
    return {std::move(weights), zf_trace};
}

double radiated_power(const arma::cx_mat &excitation_cov, const CouplingMatrix &coupling)
{
    if (excitation_cov.n_rows != coupling.size() || excitation_cov.n_cols != coupling.size())
        throw std::invalid_argument("radiated power: excitation covariance size mismatch");
    return trace_product(excitation_cov, coupling.entries());
}

double downlink_ideal_rate(const arma::cx_mat &channels, const DownlinkConfig &config)
{
    check_config(config);
    const ZfPrecoder zf = zf_precoder(channels, config.total_power);
    return std::log2(1.0 + config.total_power /
                               (config.noise_density * config.noise_figure) / zf.zf_trace);
}

TransmitCovariance dithered_transmit_covariance(const arma::cx_mat &precoder_weights,
                                                const arma::cx_mat &projector,
                                                double dither_power)
{
    if (dither_power < 0.0)
        throw std::invalid_argument("transmit covariance: dither power must be non-negative");

    arma::cx_mat cov = hermitize(precoder_weights * precoder_weights.t());
    if (dither_power > 0.0)
    {
        if (projector.n_rows != cov.n_rows || projector.n_cols != cov.n_cols)
            throw std::invalid_argument("transmit covariance: projector size mismatch");
        const double fro_sq = std::pow(arma::norm(projector, "fro"), 2);
        if (fro_sq <= 1e-20)
            throw model_error("transmit covariance: no null space available for dithering "
                              "(projector vanishes)");
        cov += (dither_power / fro_sq) * hermitize(projector * projector.t());
    }
    arma::vec rescale = arma::real(cov.diag());
    return {std::move(cov), std::move(rescale)};
}

double alpha_power_equalizer(const TransmitCovariance &transmit, const CouplingMatrix &coupling,
                             double radiated_ideal, AlphaMode mode)
{
    if (!(radiated_ideal > 0.0))
        throw std::invalid_argument("power equalizer: ideal radiated power must be positive");

    double denominator = 0.0;
    switch (mode)
    {
    case AlphaMode::exact:
        denominator =
            trace_product(arcsine_covariance(transmit.cov, transmit.rescale), coupling.entries());
        break;
    case AlphaMode::uqn:
        denominator = kTwoOverPi * radiated_ideal +
                      (1.0 - kTwoOverPi) * mean_coupling_diagonal(coupling) *
                          arma::accu(transmit.rescale);
        break;
    }
    if (!(denominator > 0.0))
        throw model_error("power equalizer: degenerate radiated power of the quantized signal");
    return radiated_ideal / denominator;
}

DitherOperator make_dither_operator(const CouplingMatrix &coupling, double delta)
{
    DitherOperator out;
    out.projector = null_space_projector(coupling, delta);
    out.fro_sq = std::pow(arma::norm(out.projector, "fro"), 2);
    if (out.fro_sq > 1e-20)
    {
        out.gram = hermitize(out.projector * out.projector.t());
        out.leakage = null_space_leakage(coupling, out.projector);
    }
    else
    {
        out.gram.zeros(coupling.size(), coupling.size());
        out.leakage = 0.0;
    }
    return out;
}

double downlink_asymptotic_loss()
{
    return 1.0;
}

PowerRatios power_ratio_diagnostic(double radiated, double alpha, double total_power,
                                   double dither_power)
{
    if (!(radiated > 0.0) || !(alpha > 0.0) || !(total_power > 0.0) || dither_power < 0.0)
        throw std::invalid_argument("power ratio: inputs must be positive");
    return {radiated / total_power, radiated / (alpha * (total_power + dither_power))};
}

DownlinkEvaluation evaluate_downlink(const arma::cx_mat &channels, const CouplingMatrix &coupling,
                                     const DownlinkConfig &config, const DitherOperator &dither)
{
    check_config(config);
    if (channels.n_cols != coupling.size())
        throw std::invalid_argument("downlink: channel columns must match the array size "
                                    "(channels are users x elements)");

    const arma::uword num_users = channels.n_rows;
    const double noise_floor = config.noise_density * config.noise_figure;

    DownlinkEvaluation out;
    const ZfPrecoder zf = zf_precoder(channels, config.total_power);
    out.zf_trace = zf.zf_trace;
    out.ideal_rate = std::log2(1.0 + config.total_power / noise_floor / zf.zf_trace);

    const arma::cx_mat precoded_cov = hermitize(zf.weights * zf.weights.t());

    TransmitCovariance transmit;
    transmit.cov = precoded_cov;
    if (config.dither_power > 0.0)
    {
        if (dither.fro_sq <= 1e-20)
            throw model_error("downlink: no null space available for dithering "
                              "(projector vanishes)");
        transmit.cov += (config.dither_power / dither.fro_sq) * dither.gram;
    }
    transmit.rescale = arma::real(transmit.cov.diag());
    if (transmit.rescale.min() <= 0.0)
        throw model_error("downlink: transmit covariance has a vanishing diagonal entry");

    const double mean_rescale = arma::mean(transmit.rescale);
    out.rescale_spread =
        arma::abs(transmit.rescale - mean_rescale).max() / mean_rescale;

    out.radiated_ideal = radiated_power(precoded_cov, coupling);

    const arma::cx_mat output_cov = arcsine_covariance(transmit.cov, transmit.rescale);
    const double quantized_radiated = trace_product(output_cov, coupling.entries());
    if (!(quantized_radiated > 0.0))
        throw model_error("downlink: degenerate radiated power of the quantized signal");
    out.alpha_exact = out.radiated_ideal / quantized_radiated;
    out.alpha_uqn = alpha_power_equalizer(transmit, coupling, out.radiated_ideal, AlphaMode::uqn);

    const double signal_exact =
        kTwoOverPi * out.alpha_exact * config.total_power / zf.zf_trace;

    // Per-user distortion seen through the channel. The with-leakage variant
    // keeps the residual dither (C_z - F F^H) inside the effective noise.
    const arma::cx_mat distortion_leak = output_cov - kTwoOverPi * precoded_cov;
    const arma::cx_mat distortion_only = output_cov - kTwoOverPi * transmit.cov;

    out.one_bit_exact.set_size(num_users);
    out.one_bit_exact_no_leakage.set_size(num_users);
    const arma::cx_mat through_leak = channels * distortion_leak * channels.t();
    const arma::cx_mat through_only = channels * distortion_only * channels.t();
    for (arma::uword k = 0; k < num_users; ++k)
    {
        const double noise_leak = noise_floor + out.alpha_exact * through_leak(k, k).real();
        const double noise_only = noise_floor + out.alpha_exact * through_only(k, k).real();
        out.one_bit_exact(k) = std::log2(1.0 + signal_exact / noise_leak);
        out.one_bit_exact_no_leakage(k) = std::log2(1.0 + signal_exact / noise_only);
    }

    const double isotropic_distortion =
        (1.0 - kTwoOverPi) * mean_coupling_diagonal(coupling) * arma::accu(transmit.rescale);
    const double signal_uqn = kTwoOverPi * out.alpha_uqn * config.total_power / zf.zf_trace;
    out.one_bit_uqn =
        std::log2(1.0 + signal_uqn / (noise_floor + out.alpha_uqn * isotropic_distortion));

    out.ratios_exact = power_ratio_diagnostic(out.radiated_ideal, out.alpha_exact,
                                              config.total_power, config.dither_power);
    return out;
}

} // namespace densearray
