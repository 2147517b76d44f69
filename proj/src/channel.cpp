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

#include "densearray/channel.hpp"

#include <cmath>

#include "densearray/rng.hpp"

namespace densearray {

ChannelSet rayleigh_channels(const CouplingMatrix &coupling, arma::uword num_users,
                             std::uint64_t seed)
{
    if (num_users < 1)
        throw std::invalid_argument("rayleigh channels: need at least one user");

    SubstreamRng rng(seed);
    arma::cx_mat generator = rng.complex_gaussian_matrix(coupling.size(), num_users);
    arma::cx_mat coefficients = coupling.square_root() * generator;
    return {std::move(coefficients), std::move(generator), seed};
}

arma::cx_vec multipath_channel(const ArrayGeometry &geometry, const MultipathSpec &spec)
{
    if (spec.paths.empty())
        throw std::invalid_argument("multipath channel: need at least one path");

    arma::cx_vec out(geometry.elements(), arma::fill::zeros);
    for (const MultipathComponent &path : spec.paths)
    {
        const double amplitude =
            geometry.spacing_over_lambda *
            std::sqrt(element_effective_area(geometry.pattern, path.direction));
        out += path.gain * amplitude * steering_vector(geometry, path.direction);
    }
    return out;
}

} // namespace densearray
