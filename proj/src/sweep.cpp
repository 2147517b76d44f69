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

#include "densearray/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "densearray/channel.hpp"
#include "densearray/downlink.hpp"
#include "densearray/rng.hpp"
#include "densearray/uplink.hpp"

// Single-threaded BLAS keeps results invariant under the sweep's own worker
// count; the realization-level parallelism recovers the throughput. The weak
// reference resolves to null when another BLAS is linked.
extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace densearray {

namespace {

constexpr arma::uword kMaxAttemptsPerRealization = 8;

void pin_blas_threads()
{
    if (openblas_set_num_threads != nullptr)
        openblas_set_num_threads(1);
}

arma::uword integer_side(arma::uword elements)
{
    const arma::uword side =
        static_cast<arma::uword>(std::llround(std::sqrt(static_cast<double>(elements))));
    return (side * side == elements) ? side : 0;
}

std::pair<double, double> mean_and_stderr(const arma::vec &samples)
{
    const double mean = arma::mean(samples);
    const double se = samples.n_elem > 1
                          ? arma::stddev(samples) / std::sqrt(static_cast<double>(samples.n_elem))
                          : 0.0;
    return {mean, se};
}

std::string format_value(double value)
{
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.9g", value);
    return buffer;
}

std::string format_optional(const std::optional<double> &value)
{
    return value ? format_value(*value) : std::string();
}

// Runs one realization body with resampling on model errors. Returns the
// number of failed attempts consumed.
arma::uword with_resampling(std::uint64_t master_seed, std::uint64_t scenario_tag,
                            arma::uword elements, arma::uword realization,
                            const std::function<void(std::uint64_t)> &body)
{
    std::string last_error;
    for (arma::uword attempt = 0; attempt < kMaxAttemptsPerRealization; ++attempt)
    {
        const std::uint64_t seed =
            realization_seed(master_seed, scenario_tag, elements, realization, attempt);
        try
        {
            body(seed);
            return attempt;
        }
        catch (const model_error &err)
        {
            last_error = err.what();
        }
    }
    std::ostringstream msg;
    msg << "realization " << realization << " at M=" << elements << " failed "
        << kMaxAttemptsPerRealization << " resampling attempts (last error: " << last_error
        << ")";
    throw model_error(msg.str());
}

void report_resampling(const char *scenario, arma::uword elements, arma::uword failures,
                       arma::uword realizations)
{
    if (failures == 0)
        return;
    std::cerr << scenario << " sweep: resampled " << failures << " failed realization attempt"
              << (failures == 1 ? "" : "s") << " at M=" << elements << "\n";
    if (static_cast<double>(failures) > 0.01 * static_cast<double>(realizations))
    {
        std::ostringstream msg;
        msg << scenario << " sweep: " << failures << " of " << realizations
            << " realizations failed (more than 1%), aborting";
        throw model_error(msg.str());
    }
}

} // namespace

void validate_config(const SweepConfig &config)
{
    if (!(config.aperture_lambda > 0.0))
        throw std::invalid_argument("config: aperture must be positive (wavelengths)");
    if (config.element_counts.empty())
        throw std::invalid_argument("config: need at least one element count");
    for (arma::uword m : config.element_counts)
    {
        if (m < 1 || integer_side(m) == 0)
        {
            std::ostringstream msg;
            msg << "config: element count " << m
                << " is not a perfect square; pick side^2 values such as 25, 49, 100";
            throw std::invalid_argument(msg.str());
        }
        if (config.users > m)
        {
            std::ostringstream msg;
            msg << "config: " << config.users << " users exceed the element count " << m
                << "; zero-forcing needs users <= elements";
            throw std::invalid_argument(msg.str());
        }
    }
    if (config.users < 1)
        throw std::invalid_argument("config: need at least one user");
    if (!(config.snr > 0.0))
        throw std::invalid_argument("config: snr must be positive (linear scale)");
    if (!(config.noise_figure >= 1.0))
        throw std::invalid_argument(
            "config: noise figure must be >= 1 (it multiplies the thermal floor)");
    if (config.realizations < 1)
        throw std::invalid_argument("config: need at least one realization");
    if (!(config.delta > 0.0))
        throw std::invalid_argument("config: delta must be positive");
    if (config.dither_ratio < 0.0)
        throw std::invalid_argument("config: dither ratio must be non-negative");
    if (config.quad_theta < 1 || config.quad_phi < 1)
        throw std::invalid_argument("config: quadrature grid sizes must be positive");
}

std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t scenario_tag,
                               arma::uword elements, arma::uword realization,
                               arma::uword attempt)
{
    return SubstreamRng::derive({master_seed, scenario_tag, static_cast<std::uint64_t>(elements),
                                 static_cast<std::uint64_t>(realization),
                                 static_cast<std::uint64_t>(attempt)});
}

std::vector<SweepRow> run_uplink_sweep(const SweepConfig &config)
{
    validate_config(config);
    pin_blas_threads();

    std::vector<SweepRow> rows;
    for (arma::uword elements : config.element_counts)
    {
        const arma::uword side = integer_side(elements);
        const double spacing = config.aperture_lambda / static_cast<double>(side);
        const ArrayGeometry geometry(spacing, side);
        const CouplingMatrix coupling = coupling_matrix_closed_form(geometry);

        UplinkConfig link;
        link.user_powers = arma::vec(config.users, arma::fill::value(config.snr));
        link.noise_density = 1.0;
        link.noise_figure = config.noise_figure;

        const arma::uword count = config.realizations;
        arma::vec ideal(count), exact(count), uqn(count);
        std::atomic<arma::uword> failures{0};

        detail::parallel_for(count, config.threads, [&](arma::uword r) {
            failures += with_resampling(
                config.seed, kUplinkScenarioTag, elements, r, [&](std::uint64_t seed) {
                    const ChannelSet channels = rayleigh_channels(coupling, config.users, seed);
                    const RateReport report =
                        uplink_rate_report(channels, coupling, link, spacing);
                    ideal(r) = arma::mean(report.ideal);
                    exact(r) = arma::mean(report.one_bit_exact);
                    uqn(r) = arma::mean(report.one_bit_uqn);
                });
        });
        report_resampling("uplink", elements, failures.load(), count);

        const auto emit = [&](const char *variant, const arma::vec &samples) {
            SweepRow row;
            row.scenario = "uplink";
            row.variant = variant;
            row.elements = elements;
            row.a_over_lambda = spacing;
            std::tie(row.mean_rate, row.stderr_rate) = mean_and_stderr(samples);
            rows.push_back(std::move(row));
        };
        emit("ideal", ideal);
        emit("onebit_exact", exact);
        emit("onebit_uqn", uqn);
    }
    return rows;
}

std::vector<SweepRow> run_downlink_sweep(const SweepConfig &config)
{
    validate_config(config);
    pin_blas_threads();

    std::vector<SweepRow> rows;
    for (arma::uword elements : config.element_counts)
    {
        const arma::uword side = integer_side(elements);
        const double spacing = config.aperture_lambda / static_cast<double>(side);
        const ArrayGeometry geometry(spacing, side);
        const CouplingMatrix coupling = coupling_matrix_closed_form(geometry);
        const DitherOperator dither = make_dither_operator(coupling, config.delta);

        const double total_power = config.snr * config.noise_figure; // eps, N0 = 1
        const double dither_power =
            config.dither ? total_power * config.dither_ratio / spacing : 0.0;

        DownlinkConfig dithered;
        dithered.total_power = total_power;
        dithered.noise_density = 1.0;
        dithered.noise_figure = config.noise_figure;
        dithered.dither_power = dither_power;
        dithered.delta = config.delta;

        DownlinkConfig undithered = dithered;
        undithered.dither_power = 0.0;

        const arma::uword count = config.realizations;
        arma::vec ideal(count), exact(count), uqn(count), nodither(count);
        arma::vec alpha_exact(count), alpha_uqn(count), alpha_nodither(count);
        arma::vec ratio_ideal(count), ratio_exact(count), ratio_uqn(count),
            ratio_nodither(count);
        std::atomic<arma::uword> failures{0};

        detail::parallel_for(count, config.threads, [&](arma::uword r) {
            failures += with_resampling(
                config.seed, kDownlinkScenarioTag, elements, r, [&](std::uint64_t seed) {
                    const ChannelSet channels = rayleigh_channels(coupling, config.users, seed);
                    const arma::cx_mat downlink_channels = arma::strans(channels.coefficients);

                    const DownlinkEvaluation with_dither =
                        evaluate_downlink(downlink_channels, coupling, dithered, dither);
                    const DownlinkEvaluation without_dither =
                        evaluate_downlink(downlink_channels, coupling, undithered, dither);

                    ideal(r) = with_dither.ideal_rate;
                    exact(r) = arma::mean(with_dither.one_bit_exact);
                    uqn(r) = with_dither.one_bit_uqn;
                    nodither(r) = arma::mean(without_dither.one_bit_exact);

                    alpha_exact(r) = with_dither.alpha_exact;
                    alpha_uqn(r) = with_dither.alpha_uqn;
                    alpha_nodither(r) = without_dither.alpha_exact;

                    ratio_ideal(r) = with_dither.ratios_exact.ideal;
                    ratio_exact(r) = with_dither.ratios_exact.one_bit;
                    ratio_uqn(r) = power_ratio_diagnostic(with_dither.radiated_ideal,
                                                          with_dither.alpha_uqn, total_power,
                                                          dither_power)
                                       .one_bit;
                    ratio_nodither(r) = without_dither.ratios_exact.one_bit;
                });
        });
        report_resampling("downlink", elements, failures.load(), count);

        const auto emit = [&](const char *variant, const arma::vec &samples,
                              std::optional<double> alpha, std::optional<double> sigma,
                              const arma::vec &ratios) {
            SweepRow row;
            row.scenario = "downlink";
            row.variant = variant;
            row.elements = elements;
            row.a_over_lambda = spacing;
            std::tie(row.mean_rate, row.stderr_rate) = mean_and_stderr(samples);
            row.alpha = alpha;
            row.sigma_d2 = sigma;
            row.p_r_ratio = arma::mean(ratios);
            row.leakage = dither.leakage;
            rows.push_back(std::move(row));
        };
        emit("ideal", ideal, std::nullopt, std::nullopt, ratio_ideal);
        emit("onebit_exact", exact, arma::mean(alpha_exact), dither_power, ratio_exact);
        emit("onebit_uqn", uqn, arma::mean(alpha_uqn), dither_power, ratio_uqn);
        emit("onebit_nodither", nodither, arma::mean(alpha_nodither), 0.0, ratio_nodither);
    }
    return rows;
}

std::string to_csv(const std::vector<SweepRow> &rows)
{
    std::string out =
        "scenario,variant,M,a_over_lambda,mean_rate,stderr,alpha,sigma_d2,p_r_ratio,leakage\n";
    for (const SweepRow &row : rows)
    {
        out += row.scenario;
        out += ',';
        out += row.variant;
        out += ',';
        out += std::to_string(row.elements);
        out += ',';
        out += format_value(row.a_over_lambda);
        out += ',';
        out += format_value(row.mean_rate);
        out += ',';
        out += format_value(row.stderr_rate);
        out += ',';
        out += format_optional(row.alpha);
        out += ',';
        out += format_optional(row.sigma_d2);
        out += ',';
        out += format_optional(row.p_r_ratio);
        out += ',';
        out += format_optional(row.leakage);
        out += '\n';
    }
    return out;
}

void emit_csv(const std::vector<SweepRow> &rows, const std::string &path)
{
    std::ofstream stream(path, std::ios::binary);
    if (!stream)
        throw std::runtime_error("cannot open output file '" + path + "' for writing");
    stream << to_csv(rows);
    if (!stream)
        throw std::runtime_error("write to output file '" + path + "' failed");
}

bool ValidationReport::all_pass() const
{
    for (const ValidationItem &item : items)
        if (!item.pass)
            return false;
    return true;
}

namespace detail {

void parallel_for(arma::uword count, arma::uword threads,
                  const std::function<void(arma::uword)> &body)
{
    arma::uword workers = threads;
    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<arma::uword>(workers, count);

    if (workers <= 1)
    {
        for (arma::uword i = 0; i < count; ++i)
            body(i);
        return;
    }

    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (arma::uword t = 0; t < workers; ++t)
    {
        pool.emplace_back([&, t]() {
            const arma::uword begin = count * t / workers;
            const arma::uword end = count * (t + 1) / workers;
            try
            {
                for (arma::uword i = begin; i < end; ++i)
                    body(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        });
    }
    for (std::thread &worker : pool)
        worker.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace detail

} // namespace densearray
