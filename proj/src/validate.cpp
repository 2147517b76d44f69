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

#include <cmath>
#include <sstream>

#include "densearray/channel.hpp"
#include "densearray/downlink.hpp"
#include "densearray/quantization.hpp"
#include "densearray/rng.hpp"
#include "densearray/sweep.hpp"
#include "densearray/uplink.hpp"

namespace densearray {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string describe(double observed, double bound, const char *relation)
{
    std::ostringstream msg;
    msg << "observed " << observed << " (" << relation << " " << bound << ")";
    return msg.str();
}

void add_item(ValidationReport &report, const std::string &name, bool pass,
              const std::string &details)
{
    report.items.push_back({name, pass, details});
}

// Wraps a check so an unexpected exception shows up as a named failure
// instead of tearing the whole report down.
void guarded(ValidationReport &report, const std::string &name,
             const std::function<void(ValidationReport &)> &check)
{
    try
    {
        check(report);
    }
    catch (const std::exception &err)
    {
        add_item(report, name, false, std::string("exception: ") + err.what());
    }
}

double quadratic_form(const arma::cx_mat &matrix, const arma::cx_vec &vector)
{
    return std::real(arma::as_scalar(arma::strans(vector) * matrix * arma::conj(vector)));
}

arma::cx_mat random_psd(SubstreamRng &rng, arma::uword size)
{
    const arma::cx_mat factor = rng.complex_gaussian_matrix(size, size);
    const arma::cx_mat gram = factor * factor.t();
    return 0.5 * (gram + gram.t()) / static_cast<double>(size);
}

} // namespace

ValidationReport validate_model(const SweepConfig &config)
{
    validate_config(config);
    ValidationReport report;

    const double oracle_tolerance =
        1e-6 * std::pow(std::max(1.0, 512.0 / static_cast<double>(config.quad_theta)), 2);

    guarded(report, "closed-form-vs-integral-oracle", [&](ValidationReport &rep) {
        double worst = 0.0;
        for (arma::uword side : {arma::uword(1), arma::uword(2), arma::uword(3)})
            for (double spacing : {0.25, 0.5})
            {
                const ArrayGeometry geometry(spacing, side);
                const arma::cx_mat closed = coupling_matrix_closed_form(geometry).entries();
                const arma::cx_mat oracle =
                    coupling_matrix_integral_oracle(geometry, config.quad_theta, config.quad_phi)
                        .entries();
                worst = std::max(worst, arma::abs(closed - oracle).max());
            }
        add_item(rep, "closed-form-vs-integral-oracle", worst < oracle_tolerance,
                 describe(worst, oracle_tolerance, "expected <"));
    });

    guarded(report, "coupling-diagonal-identity", [&](ValidationReport &rep) {
        const ArrayGeometry geometry(0.3, 4);
        const arma::cx_mat entries = coupling_matrix_closed_form(geometry).entries();
        const double expected = kPi * 0.3 * 0.3;
        const double worst = arma::abs(arma::real(entries.diag()) - expected).max();
        add_item(rep, "coupling-diagonal-identity", worst == 0.0,
                 describe(worst, 0.0, "expected =="));
    });

    guarded(report, "gamma-quadrature", [&](ValidationReport &rep) {
        const double gamma =
            gamma_constant_quadrature(ElementPattern::cosine, config.quad_theta, config.quad_phi);
        const double error = std::abs(gamma - gamma_constant(ElementPattern::cosine).gamma);
        add_item(rep, "gamma-quadrature", error < 1e-9, describe(error, 1e-9, "expected <"));
    });

    guarded(report, "passivity-sweep-geometries", [&](ValidationReport &rep) {
        double worst = 0.0;
        for (arma::uword elements : config.element_counts)
        {
            const arma::uword side =
                static_cast<arma::uword>(std::llround(std::sqrt(double(elements))));
            const ArrayGeometry geometry(config.aperture_lambda / double(side), side);
            worst = std::max(worst, coupling_matrix_closed_form(geometry).max_eigenvalue());
        }
        add_item(rep, "passivity-sweep-geometries", worst <= 1.0 + 1e-9,
                 describe(worst, 1.0 + 1e-9, "expected <="));
    });

    guarded(report, "parseval-random-vectors", [&](ValidationReport &rep) {
        SubstreamRng rng(SubstreamRng::derive({config.seed, 0x7061727365ULL}));
        double worst_excess = -arma::datum::inf;
        for (arma::uword side : {arma::uword(4), arma::uword(8)})
        {
            const ArrayGeometry geometry(config.aperture_lambda / double(side), side);
            const CouplingMatrix coupling = coupling_matrix_closed_form(geometry);
            for (int trial = 0; trial < 200; ++trial)
            {
                const arma::cx_vec vector = rng.complex_gaussian_vector(geometry.elements());
                const double excess = quadratic_form(coupling.entries(), vector) -
                                      std::pow(arma::norm(vector, 2), 2);
                worst_excess = std::max(worst_excess, excess);
            }
        }
        add_item(rep, "parseval-random-vectors", worst_excess <= 1e-9,
                 describe(worst_excess, 1e-9, "expected <="));
    });

    guarded(report, "impedance-passivity", [&](ValidationReport &rep) {
        SubstreamRng rng(SubstreamRng::derive({config.seed, 0x696D7065ULL}));
        const arma::uword size = 8;
        double worst = 0.0;
        for (int trial = 0; trial < 25; ++trial)
        {
            const arma::cx_mat g = rng.complex_gaussian_matrix(size, size);
            const arma::cx_mat x = rng.complex_gaussian_matrix(size, size);
            const arma::cx_mat impedance =
                g * g.t() + std::complex<double>(0.0, 0.5) * (x + x.t());
            worst = std::max(worst, coupling_from_impedance(impedance, 1.3).max_eigenvalue());
        }
        const arma::cx_mat matched(arma::eye(size, size) * 2.0,
                                   arma::mat(size, size, arma::fill::zeros));
        const double identity_error =
            arma::abs(coupling_from_impedance(matched, 2.0).entries() -
                      arma::cx_mat(arma::eye(size, size), arma::mat(size, size, arma::fill::zeros)))
                .max();
        const bool pass = worst <= 1.0 + 1e-9 && identity_error < 1e-12;
        std::ostringstream details;
        details << "max eigenvalue " << worst << ", matched-load identity error "
                << identity_error;
        add_item(rep, "impedance-passivity", pass, details.str());
    });

    guarded(report, "steering-vector-norm", [&](ValidationReport &rep) {
        SubstreamRng rng(SubstreamRng::derive({config.seed, 0x7374656572ULL}));
        const ArrayGeometry geometry(0.37, 6);
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial)
        {
            const Direction direction(rng.uniform() * kPi / 2.0, (2.0 * rng.uniform() - 1.0) * kPi);
            const double norm_sq =
                std::pow(arma::norm(steering_vector(geometry, direction), 2), 2);
            worst = std::max(worst, std::abs(norm_sq - double(geometry.elements())));
        }
        add_item(rep, "steering-vector-norm", worst < 1e-9, describe(worst, 1e-9, "expected <"));
    });

    guarded(report, "square-root-consistency", [&](ValidationReport &rep) {
        const ArrayGeometry geometry(0.25, 6);
        const CouplingMatrix coupling = coupling_matrix_closed_form(geometry);
        const double relative =
            arma::norm(coupling.square_root() * coupling.square_root() - coupling.entries(),
                       "fro") /
            arma::norm(coupling.entries(), "fro");
        add_item(rep, "square-root-consistency", relative < 1e-10,
                 describe(relative, 1e-10, "expected <"));
    });

    guarded(report, "effective-rank", [&](ValidationReport &rep) {
        bool pass = true;
        std::ostringstream details;
        for (arma::uword elements : config.element_counts)
        {
            const arma::uword side =
                static_cast<arma::uword>(std::llround(std::sqrt(double(elements))));
            const double spacing = config.aperture_lambda / double(side);
            const CouplingMatrix coupling =
                coupling_matrix_closed_form(ArrayGeometry(spacing, side));
            const double threshold = 0.01 * coupling.max_eigenvalue();
            const double count =
                double(arma::accu(coupling.eigenvalues() > threshold));
            const double expected = 4.0 * spacing * spacing * double(elements);
            pass = pass && count >= 0.5 * expected && count <= 2.0 * expected;
            details << "M=" << elements << ": " << count << "/" << expected << " ";
        }
        add_item(rep, "effective-rank", pass, details.str());
    });

    guarded(report, "null-space-leakage", [&](ValidationReport &rep) {
        const ArrayGeometry geometry(0.125, 20);
        const CouplingMatrix coupling = coupling_matrix_closed_form(geometry);
        const double leakage =
            null_space_leakage(coupling, null_space_projector(coupling, config.delta));
        add_item(rep, "null-space-leakage", leakage >= 0.0 && leakage < 0.02,
                 describe(leakage, 0.02, "expected <"));
    });

    guarded(report, "arcsine-monte-carlo", [&](ValidationReport &rep) {
        SubstreamRng rng(SubstreamRng::derive({config.seed, 0x617263ULL}));
        const arma::uword size = 6;
        const arma::uword draws = 200000;
        const arma::cx_mat input_cov = random_psd(rng, size);
        const arma::cx_mat root = arma::chol(input_cov, "lower");
        const arma::vec rescale = arma::real(input_cov.diag());
        const arma::cx_mat expected_out = arcsine_covariance(input_cov, rescale);
        const arma::cx_mat expected_cross = std::sqrt(2.0 / kPi) * input_cov;

        arma::cx_mat sum_out(size, size, arma::fill::zeros);
        arma::cx_mat sum_cross(size, size, arma::fill::zeros);
        arma::mat sum_sq_re(size, size, arma::fill::zeros);
        arma::mat sum_sq_im(size, size, arma::fill::zeros);
        for (arma::uword n = 0; n < draws; ++n)
        {
            const arma::cx_vec sample = root * rng.complex_gaussian_vector(size);
            const arma::cx_vec quantized = one_bit_quantize(sample, rescale);
            const arma::cx_mat outer = quantized * quantized.t();
            sum_out += outer;
            sum_cross += quantized * sample.t();
            sum_sq_re += arma::square(arma::real(outer));
            sum_sq_im += arma::square(arma::imag(outer));
        }
        const double inv = 1.0 / double(draws);
        const arma::cx_mat mean_out = sum_out * inv;
        const arma::cx_mat mean_cross = sum_cross * inv;
        const arma::mat var_re = (sum_sq_re * inv - arma::square(arma::real(mean_out)));
        const arma::mat var_im = (sum_sq_im * inv - arma::square(arma::imag(mean_out)));
        const arma::mat se_re = arma::sqrt(arma::clamp(var_re, 0.0, arma::datum::inf) * inv);
        const arma::mat se_im = arma::sqrt(arma::clamp(var_im, 0.0, arma::datum::inf) * inv);

        // 4.5 sigma: smoke-test threshold, loose enough for arbitrary seeds
        const double z = 4.5;
        const bool out_ok =
            arma::all(arma::vectorise(arma::abs(arma::real(mean_out - expected_out)) <=
                                      z * se_re + 1e-9)) &&
            arma::all(arma::vectorise(arma::abs(arma::imag(mean_out - expected_out)) <=
                                      z * se_im + 1e-9));
        // |y_i|^2 = D_i identically, so Var(y_i x_j^*) <= D_i C_jj <= max(D)^2.
        const double cross_err = arma::abs(mean_cross - expected_cross).max();
        const double cross_scale = z * rescale.max() * std::sqrt(inv) + 1e-9;
        const bool cross_ok = cross_err <= cross_scale;
        std::ostringstream details;
        details << "arcsine max |z|-excess ok: " << (out_ok ? "yes" : "no")
                << ", cross-covariance error " << cross_err << " (bound " << cross_scale << ")";
        add_item(rep, "arcsine-monte-carlo", out_ok && cross_ok, details.str());
    });

    guarded(report, "quantizer-magnitude", [&](ValidationReport &rep) {
        SubstreamRng rng(SubstreamRng::derive({config.seed, 0x7175616EULL}));
        const arma::vec rescale = {0.7, 1.3, 2.0, 8.0};
        const arma::cx_vec quantized =
            one_bit_quantize(rng.complex_gaussian_vector(4), rescale);
        const double worst =
            arma::abs(arma::square(arma::abs(quantized)) - rescale).max();
        add_item(rep, "quantizer-magnitude", worst < 1e-12,
                 describe(worst, 1e-12, "expected <"));
    });

    guarded(report, "noise-covariance-passivity", [&](ValidationReport &rep) {
        const ArrayGeometry geometry(0.5, 5);
        const CouplingMatrix coupling = coupling_matrix_closed_form(geometry);
        UplinkConfig link;
        link.user_powers = arma::vec(2, arma::fill::value(config.snr));
        link.noise_figure = config.noise_figure;
        arma::vec eigs;
        arma::eig_sym(eigs, total_noise_covariance(coupling, link));
        const double bound = config.noise_figure * link.noise_density * (1.0 + 1e-9);
        add_item(rep, "noise-covariance-passivity", eigs.back() <= bound,
                 describe(eigs.back(), bound, "expected <="));
    });

    guarded(report, "zero-forcing-identity", [&](ValidationReport &rep) {
        SubstreamRng rng(SubstreamRng::derive({config.seed, 0x7A66ULL}));
        const arma::cx_mat channels = rng.complex_gaussian_matrix(2, 16);
        const ZfPrecoder zf = zf_precoder(channels, 3.0);
        arma::cx_mat product = channels * zf.weights;
        const double diag_scale = std::sqrt(3.0 / zf.zf_trace);
        product.diag() -= diag_scale;
        const double worst_offdiag = arma::abs(product).max();
        const double power_error =
            std::abs(std::pow(arma::norm(zf.weights, "fro"), 2) - 3.0) / 3.0;
        const bool pass = worst_offdiag < 1e-9 && power_error < 1e-10;
        std::ostringstream details;
        details << "max |HF - scaled identity| " << worst_offdiag << ", power error "
                << power_error;
        add_item(rep, "zero-forcing-identity", pass, details.str());
    });

    guarded(report, "power-conservation", [&](ValidationReport &rep) {
        SubstreamRng rng(SubstreamRng::derive({config.seed, 0x706F77ULL}));
        const ArrayGeometry geometry(0.5, 4);
        const CouplingMatrix coupling = coupling_matrix_closed_form(geometry);
        double worst_ratio = 0.0;
        for (int trial = 0; trial < 200; ++trial)
        {
            const arma::cx_mat excitation = random_psd(rng, geometry.elements());
            worst_ratio = std::max(worst_ratio, radiated_power(excitation, coupling) /
                                                    std::real(arma::trace(excitation)));
        }
        add_item(rep, "power-conservation", worst_ratio <= 1.0 + 1e-9,
                 describe(worst_ratio, 1.0 + 1e-9, "expected <="));
    });

    guarded(report, "alpha-power-contract", [&](ValidationReport &rep) {
        const ArrayGeometry geometry(0.25, 6);
        const CouplingMatrix coupling = coupling_matrix_closed_form(geometry);
        const DitherOperator dither = make_dither_operator(coupling, config.delta);
        DownlinkConfig link;
        link.total_power = config.snr * config.noise_figure;
        link.noise_figure = config.noise_figure;
        link.dither_power = link.total_power * config.dither_ratio / 0.25;
        link.delta = config.delta;
        const ChannelSet channels = rayleigh_channels(
            coupling, 2, SubstreamRng::derive({config.seed, 0x616C70ULL}));
        const DownlinkEvaluation eval = evaluate_downlink(
            arma::strans(channels.coefficients), coupling, link, dither);

        const TransmitCovariance transmit = dithered_transmit_covariance(
            zf_precoder(arma::strans(channels.coefficients), link.total_power).weights,
            dither.projector, link.dither_power);
        const double equalized =
            eval.alpha_exact *
            std::real(arma::accu(arcsine_covariance(transmit.cov, transmit.rescale) %
                                 arma::strans(coupling.entries())));
        const double relative =
            std::abs(equalized - eval.radiated_ideal) / eval.radiated_ideal;
        add_item(rep, "alpha-power-contract", relative < 1e-9,
                 describe(relative, 1e-9, "expected <"));
    });

    guarded(report, "one-bit-below-ideal", [&](ValidationReport &rep) {
        const ArrayGeometry geometry(0.5, 5);
        const CouplingMatrix coupling = coupling_matrix_closed_form(geometry);
        const DitherOperator dither = make_dither_operator(coupling, config.delta);
        UplinkConfig up;
        up.user_powers = arma::vec(2, arma::fill::value(config.snr));
        up.noise_figure = config.noise_figure;
        DownlinkConfig down;
        down.total_power = config.snr * config.noise_figure;
        down.noise_figure = config.noise_figure;
        down.dither_power = down.total_power * config.dither_ratio / 0.5;
        down.delta = config.delta;

        double worst = -arma::datum::inf;
        for (arma::uword r = 0; r < 10; ++r)
        {
            const std::uint64_t seed = SubstreamRng::derive({config.seed, 0x626F756EULL, r});
            const ChannelSet channels = rayleigh_channels(coupling, 2, seed);
            const RateReport report_up = uplink_rate_report(channels, coupling, up, 0.5);
            worst = std::max(worst, (report_up.one_bit_exact - report_up.ideal).max());
            const DownlinkEvaluation eval =
                evaluate_downlink(arma::strans(channels.coefficients), coupling, down, dither);
            worst = std::max(worst, (eval.one_bit_exact - eval.ideal_rate).max());
        }
        add_item(rep, "one-bit-below-ideal", worst <= 1e-9,
                 describe(worst, 1e-9, "expected <="));
    });

    return report;
}

} // namespace densearray
