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

#ifndef DENSEARRAY_SWEEP_HPP
#define DENSEARRAY_SWEEP_HPP

#include <armadillo>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace densearray {

// Fixed-aperture sweep: the array side length in wavelengths stays constant
// while the element count (and with it the spacing a/lambda = aperture/side)
// varies. `snr` is eps_k/N0 on the uplink and eps/(N0 N_F) on the downlink.
struct SweepConfig {
    double aperture_lambda = 2.5;
    std::vector<arma::uword> element_counts = {25, 49, 100, 196, 400};
    arma::uword users = 2;
    double snr = 2.0;
    double noise_figure = 2.0;
    arma::uword realizations = 100;
    std::uint64_t seed = 1;
    double delta = 0.01;
    double dither_ratio = 1.0 / 3.0; // sigma_d^2 / eps as a multiple of lambda/a
    bool dither = true;
    arma::uword quad_theta = 512;
    arma::uword quad_phi = 1024;
    arma::uword threads = 0; // 0 = hardware concurrency
};

// Throws std::invalid_argument with an actionable message on the first
// violated constraint.
void validate_config(const SweepConfig &config);

struct SweepRow {
    std::string scenario; // uplink | downlink
    std::string variant;  // ideal | onebit_exact | onebit_uqn | onebit_nodither
    arma::uword elements = 0;
    double a_over_lambda = 0.0;
    double mean_rate = 0.0;
    double stderr_rate = 0.0;
    std::optional<double> alpha;
    std::optional<double> sigma_d2;
    std::optional<double> p_r_ratio;
    std::optional<double> leakage;
};

// Monte Carlo sweeps. Deterministic for a given (config, seed) and invariant
// under the worker thread count: every realization draws from its own
// substream and the reduction runs in realization order. Rank-deficient
// realizations are resampled from fresh substreams; the run aborts if more
// than 1% of the realization budget fails.
std::vector<SweepRow> run_uplink_sweep(const SweepConfig &config);
std::vector<SweepRow> run_downlink_sweep(const SweepConfig &config);

// CSV with the fixed column set
//   scenario,variant,M,a_over_lambda,mean_rate,stderr,alpha,sigma_d2,p_r_ratio,leakage
// Floats carry 9 significant digits; inapplicable fields stay empty. Output
// is byte-identical across runs with identical inputs.
std::string to_csv(const std::vector<SweepRow> &rows);
void emit_csv(const std::vector<SweepRow> &rows, const std::string &path);

// Reduced-size run of the model property suite (passivity, Parseval,
// closed form vs quadrature oracle, arcsine Monte Carlo, power accounting).
// The oracle-equivalence tolerance follows the documented schedule
// 1e-6 * max(1, 512/theta_points)^2 so coarser grids stay testable.
struct ValidationItem {
    std::string name;
    bool pass = false;
    std::string details;
};

struct ValidationReport {
    std::vector<ValidationItem> items;
    bool all_pass() const;
};

ValidationReport validate_model(const SweepConfig &config);

// Substream key of one realization attempt; exposed so tests can reproduce
// individual sweep draws.
std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t scenario_tag,
                               arma::uword elements, arma::uword realization,
                               arma::uword attempt);

inline constexpr std::uint64_t kUplinkScenarioTag = 0x75706C6B;   // "uplk"
inline constexpr std::uint64_t kDownlinkScenarioTag = 0x646E6C6B; // "dnlk"

namespace detail {

// Static block partition over [0, count); body must be safe for concurrent
// calls on distinct indices. Exceptions from workers are rethrown.
void parallel_for(arma::uword count, arma::uword threads,
                  const std::function<void(arma::uword)> &body);

} // namespace detail

} // namespace densearray

#endif
