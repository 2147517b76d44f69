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

#ifndef DENSEARRAY_CHANNEL_HPP
#define DENSEARRAY_CHANNEL_HPP

#include <armadillo>
#include <cstdint>
#include <vector>

#include "densearray/array_model.hpp"
#include "densearray/types.hpp"

namespace densearray {

// One draw of K user channels. H = B^(1/2) S holds exactly by construction,
// so a channel column has covariance B in the isotropic Rayleigh model.
struct ChannelSet {
    arma::cx_mat coefficients; // H, elements x users
    arma::cx_mat generator;    // S, IID CN(0,1)
    std::uint64_t seed;
};

// Isotropic Rayleigh channels: S has IID CN(0,1) entries, H = B^(1/2) S.
// Deterministic for a given seed.
ChannelSet rayleigh_channels(const CouplingMatrix &coupling, arma::uword num_users,
                             std::uint64_t seed);

struct MultipathComponent {
    std::complex<double> gain;
    Direction direction;
};

// Finite multipath description; gain normalization is the caller's choice.
struct MultipathSpec {
    std::vector<MultipathComponent> paths;
};

// Superposition of the per-path contributions
//   gain * (a/lambda) * sqrt(A_e(theta,phi)/a^2) * a(theta,phi).
arma::cx_vec multipath_channel(const ArrayGeometry &geometry, const MultipathSpec &spec);

} // namespace densearray

#endif
