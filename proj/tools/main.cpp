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

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "densearray/sweep.hpp"

namespace {

// Exit codes: 0 success, 1 configuration error, 2 numerical failure,
// 3 property-suite failure.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitValidation = 3;

struct CliOptions {
    densearray::SweepConfig sweep;
    std::vector<unsigned long long> elements;
    unsigned long long quad_points = 512;
    std::string out_path;
};

void add_common_flags(CLI::App *cmd, CliOptions &options)
{
    cmd->add_option("--aperture", options.sweep.aperture_lambda,
                    "Array side length in wavelengths")
        ->capture_default_str();
    cmd->add_option("--elements", options.elements,
                    "Comma-separated element counts (perfect squares)")
        ->delimiter(',');
    cmd->add_option("--users", options.sweep.users, "Number of users")->capture_default_str();
    cmd->add_option("--snr", options.sweep.snr,
                    "Linear SNR: eps_k/N0 (uplink) or eps/(N0*N_F) (downlink)")
        ->capture_default_str();
    cmd->add_option("--noise-figure", options.sweep.noise_figure, "Receiver noise figure N_F")
        ->capture_default_str();
    cmd->add_option("--realizations", options.sweep.realizations,
                    "Channel realizations per sweep point")
        ->capture_default_str();
    cmd->add_option("--seed", options.sweep.seed, "Master RNG seed")->capture_default_str();
    cmd->add_option("--delta", options.sweep.delta,
                    "Eigenvalue threshold of the dither null-space projector")
        ->capture_default_str();
    cmd->add_option("--dither-ratio", options.sweep.dither_ratio,
                    "sigma_d^2/eps as a multiple of lambda/a")
        ->capture_default_str();
    cmd->add_flag_callback(
        "--no-dither", [&options]() { options.sweep.dither = false; },
        "Disable downlink dithering (sigma_d^2 = 0)");
    cmd->add_option("--quad-points", options.quad_points,
                    "Quadrature theta points for validation (phi uses twice as many)")
        ->capture_default_str();
    cmd->add_option("--threads", options.sweep.threads,
                    "Worker threads (0 = hardware concurrency)")
        ->capture_default_str();
    cmd->add_option("--out", options.out_path, "Output CSV path (stdout when omitted)");
}

void finalize(CliOptions &options)
{
    if (!options.elements.empty())
    {
        options.sweep.element_counts.clear();
        for (unsigned long long m : options.elements)
            options.sweep.element_counts.push_back(static_cast<arma::uword>(m));
    }
    options.sweep.quad_theta = static_cast<arma::uword>(options.quad_points);
    options.sweep.quad_phi = static_cast<arma::uword>(2 * options.quad_points);
}

int run_sweep(const CliOptions &options, bool uplink)
{
    const std::vector<densearray::SweepRow> rows =
        uplink ? densearray::run_uplink_sweep(options.sweep)
               : densearray::run_downlink_sweep(options.sweep);
    if (options.out_path.empty())
        std::cout << densearray::to_csv(rows);
    else
    {
        densearray::emit_csv(rows, options.out_path);
        std::cerr << "wrote " << rows.size() << " rows to " << options.out_path << "\n";
    }
    return kExitOk;
}

int run_validation(const CliOptions &options)
{
    const densearray::ValidationReport report = densearray::validate_model(options.sweep);
    for (const densearray::ValidationItem &item : report.items)
        std::cout << (item.pass ? "[ ok ] " : "[FAIL] ") << item.name << ": " << item.details
                  << "\n";
    std::cout << (report.all_pass() ? "all properties hold\n" : "property violations found\n");
    return report.all_pass() ? kExitOk : kExitValidation;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Spectral-efficiency simulator for dense planar arrays with 1-bit converters"};
    app.require_subcommand(1);

    CliOptions options;
    CLI::App *uplink = app.add_subcommand("uplink", "Fixed-aperture uplink rate sweep (1-bit ADCs)");
    CLI::App *downlink =
        app.add_subcommand("downlink", "Fixed-aperture downlink rate sweep (1-bit DACs)");
    CLI::App *validate =
        app.add_subcommand("validate", "Run the reduced-size model property suite");
    add_common_flags(uplink, options);
    add_common_flags(downlink, options);
    add_common_flags(validate, options);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &help)
    {
        return app.exit(help);
    }
    catch (const CLI::ParseError &err)
    {
        app.exit(err);
        return kExitConfig;
    }

    try
    {
        finalize(options);
        if (uplink->parsed())
            return run_sweep(options, true);
        if (downlink->parsed())
            return run_sweep(options, false);
        return run_validation(options);
    }
    catch (const std::invalid_argument &err)
    {
        std::cerr << "configuration error: " << err.what() << "\n";
        return kExitConfig;
    }
    catch (const std::exception &err)
    {
        std::cerr << "numerical failure: " << err.what() << "\n";
        return kExitNumerical;
    }
}
