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
//
// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the process exits non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "densearray/channel.hpp"
#include "densearray/downlink.hpp"
#include "densearray/quantization.hpp"
#include "densearray/rng.hpp"
#include "densearray/sweep.hpp"
#include "densearray/uplink.hpp"
#include "oracles.hpp"

using namespace densearray;
using densearray::testing::CovarianceAccumulator;
using densearray::testing::kPi;
using densearray::testing::max_z_score;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome pass_if(bool condition, const std::string &detail)
{
    return {condition, detail};
}

arma::cx_mat random_psd(SubstreamRng &rng, arma::uword size)
{
    const arma::cx_mat factor = rng.complex_gaussian_matrix(size, size);
    const arma::cx_mat gram = factor * factor.t();
    return 0.5 * (gram + gram.t()) / double(size);
}

double parseval_form(const arma::cx_mat &matrix, const arma::cx_vec &vec)
{
    return std::real(arma::as_scalar(arma::strans(vec) * matrix * arma::conj(vec)));
}

const SweepRow &find_row(const std::vector<SweepRow> &rows, const std::string &variant,
                         arma::uword elements)
{
    for (const SweepRow &row : rows)
        if (row.variant == variant && row.elements == elements)
            return row;
    throw std::runtime_error("row not found: " + variant);
}

// ---------------------------------------------------------------- criteria

Outcome coupling_matrix_correctness()
{
    double worst = 0.0;
    double worst_diag = 0.0;
    for (arma::uword side : {arma::uword(1), arma::uword(2), arma::uword(3), arma::uword(5)})
        for (double ratio : {0.125, 0.25, 0.5})
        {
            const ArrayGeometry geometry(ratio, side);
            const arma::cx_mat closed = coupling_matrix_closed_form(geometry).entries();
            const arma::cx_mat oracle =
                coupling_matrix_integral_oracle(geometry, 512, 1024).entries();
            worst = std::max(worst, arma::abs(closed - oracle).max());
            worst_diag = std::max(
                worst_diag,
                arma::abs(arma::real(closed.diag()) - kPi * ratio * ratio).max());
        }
    std::ostringstream detail;
    detail << "max |closed - oracle| = " << worst << " (< 1e-6), max diagonal deviation = "
           << worst_diag << " (== 0)";
    return pass_if(worst < 1e-6 && worst_diag == 0.0, detail.str());
}

Outcome passivity_certificates()
{
    double worst_eig = 0.0;
    double worst_excess = -arma::datum::inf;
    SubstreamRng rng(2024);
    for (arma::uword elements : {25, 49, 100, 196, 400})
    {
        const arma::uword side = arma::uword(std::llround(std::sqrt(double(elements))));
        const ArrayGeometry geometry(2.5 / double(side), side);
        const CouplingMatrix coupling = coupling_matrix_closed_form(geometry);
        worst_eig = std::max(worst_eig, coupling.max_eigenvalue());
        for (int trial = 0; trial < 1000; ++trial)
        {
            const arma::cx_vec f = rng.complex_gaussian_vector(elements);
            worst_excess =
                std::max(worst_excess, parseval_form(coupling.entries(), f) -
                                           std::pow(arma::norm(f, 2), 2));
        }
    }
    std::ostringstream detail;
    detail << "max eigenvalue = " << worst_eig << " (<= 1+1e-9), max Parseval excess = "
           << worst_excess << " (<= 1e-9)";
    return pass_if(worst_eig <= 1.0 + 1e-9 && worst_excess <= 1e-9, detail.str());
}

Outcome impedance_relation()
{
    SubstreamRng rng(99);
    const arma::uword size = 8;
    double worst_eig = 0.0;
    for (int trial = 0; trial < 100; ++trial)
    {
        const arma::cx_mat g = rng.complex_gaussian_matrix(size, size);
        const arma::cx_mat x = rng.complex_gaussian_matrix(size, size);
        const arma::cx_mat impedance =
            g * g.t() + std::complex<double>(0.0, 0.5) * (x + x.t());
        worst_eig =
            std::max(worst_eig, coupling_from_impedance(impedance, 1.1).max_eigenvalue());
    }
    const arma::cx_mat matched(2.0 * arma::eye(size, size),
                               arma::mat(size, size, arma::fill::zeros));
    const arma::cx_mat identity(arma::eye(size, size), arma::mat(size, size, arma::fill::zeros));
    const double identity_error =
        arma::abs(coupling_from_impedance(matched, 2.0).entries() - identity).max();
    std::ostringstream detail;
    detail << "max eigenvalue over 100 passive networks = " << worst_eig
           << " (<= 1+1e-9), matched-load deviation from identity = " << identity_error
           << " (< 1e-12)";
    return pass_if(worst_eig <= 1.0 + 1e-9 && identity_error < 1e-12, detail.str());
}

Outcome arcsine_bussgang_oracle()
{
    const arma::uword size = 8;
    const arma::uword draws = 1000000;
    double worst_out = 0.0, worst_cross = 0.0;
    for (std::uint64_t matrix_index = 0; matrix_index < 5; ++matrix_index)
    {
        SubstreamRng rng(SubstreamRng::derive({4242, matrix_index}));
        const arma::cx_mat cov = random_psd(rng, size);
        const arma::cx_mat root = arma::chol(cov, "lower");
        const arma::vec rescale = arma::real(cov.diag());
        const arma::cx_mat expected_out = arcsine_covariance(cov, rescale);
        const arma::cx_mat expected_cross = std::sqrt(2.0 / kPi) * cov;

        CovarianceAccumulator out_accum(size), cross_accum(size);
        for (arma::uword n = 0; n < draws; ++n)
        {
            const arma::cx_vec sample = root * rng.complex_gaussian_vector(size);
            const arma::cx_vec quantized = one_bit_quantize(sample, rescale);
            out_accum.add(quantized, quantized);
            cross_accum.add(quantized, sample);
        }
        worst_out = std::max(worst_out, max_z_score(out_accum.finish(), expected_out));
        worst_cross = std::max(worst_cross, max_z_score(cross_accum.finish(), expected_cross));
    }
    std::ostringstream detail;
    detail << "max z-score: arcsine " << worst_out << ", cross-covariance " << worst_cross
           << " (both <= 3)";
    return pass_if(worst_out <= 3.0 && worst_cross <= 3.0, detail.str());
}

Outcome uplink_asymptotic_loss_convergence()
{
    // frozen values of N_F / (1 + (pi/2)(N_F - 1)), computed independently
    const double limit = 0.7779690592966854;
    const bool formula_ok =
        std::abs(uplink_asymptotic_loss(1.0) - 1.0) < 1e-9 &&
        std::abs(uplink_asymptotic_loss(2.0) - limit) < 1e-9 &&
        std::abs(uplink_asymptotic_loss(1e12) - 0.6366197723675814) < 1e-9;

    std::vector<double> ratios;
    for (arma::uword side : {arma::uword(5), arma::uword(10), arma::uword(20)})
    {
        const double spacing = 2.5 / double(side);
        const CouplingMatrix coupling =
            coupling_matrix_closed_form(ArrayGeometry(spacing, side));
        UplinkConfig link;
        link.user_powers = arma::vec(2, arma::fill::value(2.0));
        link.noise_figure = 2.0;

        double accum = 0.0;
        arma::uword count = 0;
        for (arma::uword r = 0; r < 100; ++r)
        {
            const std::uint64_t seed = SubstreamRng::derive({7070, side, r});
            const ChannelSet channels = rayleigh_channels(coupling, 2, seed);
            const arma::vec ideal = uplink_ideal_rates(channels.coefficients, coupling, link);
            const arma::vec uqn =
                uplink_one_bit_rates(channels.coefficients, coupling, link, UplinkBound::uqn);
            for (arma::uword k = 0; k < 2; ++k)
            {
                accum += (std::exp2(uqn(k)) - 1.0) / (std::exp2(ideal(k)) - 1.0);
                ++count;
            }
        }
        ratios.push_back(accum / double(count));
    }
    const bool monotone = std::abs(ratios[0] - limit) > std::abs(ratios[1] - limit) &&
                          std::abs(ratios[1] - limit) > std::abs(ratios[2] - limit);
    const bool close = std::abs(ratios[2] - limit) <= 0.15 * limit;
    std::ostringstream detail;
    detail << "SNR-loss ratios {M=25: " << ratios[0] << ", M=100: " << ratios[1]
           << ", M=400: " << ratios[2] << "} vs limit " << limit
           << "; formula values ok: " << (formula_ok ? "yes" : "no");
    return pass_if(formula_ok && monotone && close, detail.str());
}

Outcome uplink_trends()
{
    SweepConfig config; // defaults: aperture 2.5, M {25..400}, K=2, snr 2, N_F 2, 100 draws
    const std::vector<SweepRow> rows = run_uplink_sweep(config);

    double ideal_min = arma::datum::inf, ideal_max = -arma::datum::inf, ideal_sum = 0.0;
    for (arma::uword elements : config.element_counts)
    {
        const double rate = find_row(rows, "ideal", elements).mean_rate;
        ideal_min = std::min(ideal_min, rate);
        ideal_max = std::max(ideal_max, rate);
        ideal_sum += rate;
    }
    const double ideal_mean = ideal_sum / double(config.element_counts.size());
    const bool flat_ideal = (ideal_max - ideal_min) < 0.10 * ideal_mean;

    const double exact_25 = find_row(rows, "onebit_exact", 25).mean_rate;
    const double exact_100 = find_row(rows, "onebit_exact", 100).mean_rate;
    const bool oversampling_gain = exact_100 > 1.15 * exact_25;

    const double gap_25 =
        std::abs(find_row(rows, "onebit_uqn", 25).mean_rate - exact_25);
    const double gap_400 = std::abs(find_row(rows, "onebit_uqn", 400).mean_rate -
                                    find_row(rows, "onebit_exact", 400).mean_rate);
    const bool uqn_converges = gap_400 < gap_25;

    std::ostringstream detail;
    detail << "ideal spread " << (ideal_max - ideal_min) / ideal_mean * 100.0
           << "% (< 10%), one-bit gain 25->100 = " << (exact_100 / exact_25 - 1.0) * 100.0
           << "% (> 15%), UQN gap " << gap_25 << " -> " << gap_400 << " (shrinking)";
    return pass_if(flat_ideal && oversampling_gain && uqn_converges, detail.str());
}

Outcome downlink_trends()
{
    SweepConfig config;
    const std::vector<SweepRow> rows = run_downlink_sweep(config);

    const double ideal_400 = find_row(rows, "ideal", 400).mean_rate;
    const double exact_400 = find_row(rows, "onebit_exact", 400).mean_rate;
    const bool near_ideal = std::abs(ideal_400 - exact_400) <= 0.15 * ideal_400;

    const double dither_gain = find_row(rows, "onebit_exact", 400).mean_rate /
                                   find_row(rows, "onebit_exact", 25).mean_rate -
                               1.0;
    const double nodither_gain = find_row(rows, "onebit_nodither", 400).mean_rate /
                                     find_row(rows, "onebit_nodither", 25).mean_rate -
                                 1.0;
    const bool dithering_required = nodither_gain < dither_gain;
    const bool dither_helps = find_row(rows, "onebit_exact", 400).mean_rate >
                              find_row(rows, "onebit_nodither", 400).mean_rate;

    bool ratio_decreasing = true;
    double previous = arma::datum::inf;
    bool ideal_ratio_ok = true;
    for (arma::uword elements : config.element_counts)
    {
        const double ratio = *find_row(rows, "onebit_exact", elements).p_r_ratio;
        ratio_decreasing = ratio_decreasing && ratio < previous;
        previous = ratio;
        ideal_ratio_ok =
            ideal_ratio_ok && *find_row(rows, "ideal", elements).p_r_ratio <= 1.0 + 1e-9;
    }

    // SNR-domain loss moves toward its dense-array limit of one
    const auto snr_ratio = [&](arma::uword elements) {
        return (std::exp2(find_row(rows, "onebit_exact", elements).mean_rate) - 1.0) /
               (std::exp2(find_row(rows, "ideal", elements).mean_rate) - 1.0);
    };
    const bool loss_vanishes = std::abs(snr_ratio(400) - downlink_asymptotic_loss()) <
                                   std::abs(snr_ratio(25) - downlink_asymptotic_loss()) &&
                               snr_ratio(400) <= 1.0 + 0.01;

    std::ostringstream detail;
    detail << "dithered vs ideal at M=400: " << exact_400 << "/" << ideal_400 << " ("
           << (1.0 - exact_400 / ideal_400) * 100.0 << "% off, <= 15%), gains dithered "
           << dither_gain * 100.0 << "% vs no-dither " << nodither_gain * 100.0
           << "%, power ratio decreasing: " << (ratio_decreasing ? "yes" : "no")
           << ", SNR ratio 25: " << snr_ratio(25) << " -> 400: " << snr_ratio(400);
    return pass_if(near_ideal && dithering_required && dither_helps && ratio_decreasing &&
                       ideal_ratio_ok && loss_vanishes,
                   detail.str());
}

Outcome power_equalization_contract()
{
    const CouplingMatrix coupling = coupling_matrix_closed_form(ArrayGeometry(2.5 / 7.0, 7));
    const DitherOperator dither = make_dither_operator(coupling, 0.01);
    DownlinkConfig config;
    config.total_power = 4.0;
    config.noise_figure = 2.0;
    config.dither_power = 4.0 / 3.0 / (2.5 / 7.0);
    config.delta = 0.01;

    double worst_contract = 0.0;
    for (std::uint64_t r = 0; r < 5; ++r)
    {
        const ChannelSet channels =
            rayleigh_channels(coupling, 2, SubstreamRng::derive({808, r}));
        const arma::cx_mat downlink = arma::strans(channels.coefficients);
        const DownlinkEvaluation eval = evaluate_downlink(downlink, coupling, config, dither);
        const TransmitCovariance transmit = dithered_transmit_covariance(
            zf_precoder(downlink, config.total_power).weights, dither.projector,
            config.dither_power);
        const double quantized_radiated =
            std::real(arma::accu(arcsine_covariance(transmit.cov, transmit.rescale) %
                                 arma::strans(coupling.entries())));
        worst_contract =
            std::max(worst_contract, std::abs(eval.alpha_exact * quantized_radiated -
                                              eval.radiated_ideal) /
                                         eval.radiated_ideal);
    }

    // uqn-mode equalizer at a synthetic nearly-uncoupled geometry, fixed P_R
    const CouplingMatrix sparse = coupling_matrix_closed_form(ArrayGeometry(1e-3, 5));
    SubstreamRng rng(4141);
    TransmitCovariance transmit;
    transmit.cov = random_psd(rng, sparse.size());
    transmit.rescale = arma::real(transmit.cov.diag());
    const double alpha = alpha_power_equalizer(transmit, sparse, 1.0, AlphaMode::uqn);
    const double alpha_error = std::abs(alpha - kPi / 2.0) / (kPi / 2.0);

    std::ostringstream detail;
    detail << "worst relative contract violation = " << worst_contract
           << " (< 1e-9), uqn alpha at a/lambda=1e-3: " << alpha << " vs pi/2 ("
           << alpha_error * 100.0 << "% off, <= 1%)";
    return pass_if(worst_contract < 1e-9 && alpha_error <= 0.01, detail.str());
}

Outcome determinism()
{
    SweepConfig config;
    config.element_counts = {25, 49};
    config.realizations = 10;
    config.seed = 123;
    config.threads = 1;

    const std::string up_once = to_csv(run_uplink_sweep(config));
    const std::string up_twice = to_csv(run_uplink_sweep(config));
    const std::string down_once = to_csv(run_downlink_sweep(config));

    config.threads = 4;
    const std::string up_parallel = to_csv(run_uplink_sweep(config));
    const std::string down_parallel = to_csv(run_downlink_sweep(config));

    const bool identical = up_once == up_twice;
    const bool invariant = up_once == up_parallel && down_once == down_parallel;
    std::ostringstream detail;
    detail << "repeat run identical: " << (identical ? "yes" : "no")
           << ", worker-count invariant: " << (invariant ? "yes" : "no");
    return pass_if(identical && invariant, detail.str());
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"C1 coupling-matrix correctness (closed form vs spherical quadrature)",
         coupling_matrix_correctness},
        {"C2 passivity certificates (eigenvalues and Parseval bound)", passivity_certificates},
        {"C3 impedance relation (passive networks stay passive)", impedance_relation},
        {"C4 arcsine/Bussgang Monte Carlo oracle", arcsine_bussgang_oracle},
        {"C5 uplink asymptotic loss convergence", uplink_asymptotic_loss_convergence},
        {"C6 uplink fixed-aperture trends", uplink_trends},
        {"C7 downlink fixed-aperture trends", downlink_trends},
        {"C8 power-equalization contract", power_equalization_contract},
        {"C9 determinism and worker-count invariance", determinism},
    };

    int failures = 0;
    for (const auto &[name, check] : criteria)
    {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try
        {
            outcome = check();
        }
        catch (const std::exception &err)
        {
            outcome = {false, std::string("exception: ") + err.what()};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %s (%.1f s): %s\n", outcome.pass ? "PASS" : "FAIL", name.c_str(),
                    seconds, outcome.detail.c_str());
        std::fflush(stdout);
        if (!outcome.pass)
            ++failures;
    }
    if (failures == 0)
        std::printf("all %zu acceptance criteria hold\n", criteria.size());
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
