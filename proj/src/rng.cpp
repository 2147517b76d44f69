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

#include "densearray/rng.hpp"

#include <cmath>

namespace densearray {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

} // namespace

SubstreamRng::SubstreamRng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

std::uint64_t SubstreamRng::derive(std::initializer_list<std::uint64_t> words)
{
    std::uint64_t h = 0x6C62272E07BB0142ULL;
    for (std::uint64_t w : words)
        h = splitmix64(h ^ w);
    return h;
}

double SubstreamRng::uniform()
{
    // top 53 bits -> [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SubstreamRng::gaussian()
{
    if (have_spare_)
    {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform(); // (0, 1], keeps the log finite
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = kTwoPi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

std::complex<double> SubstreamRng::complex_gaussian()
{
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-std::log(u1)); // scaled for CN(0,1)
    const double angle = kTwoPi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

arma::cx_mat SubstreamRng::complex_gaussian_matrix(arma::uword n_rows, arma::uword n_cols)
{
    arma::cx_mat out(n_rows, n_cols);
    for (arma::uword c = 0; c < n_cols; ++c)
        for (arma::uword r = 0; r < n_rows; ++r)
            out(r, c) = complex_gaussian();
    return out;
}

arma::cx_vec SubstreamRng::complex_gaussian_vector(arma::uword n_elem)
{
    arma::cx_vec out(n_elem);
    for (arma::uword i = 0; i < n_elem; ++i)
        out(i) = complex_gaussian();
    return out;
}

} // namespace densearray
