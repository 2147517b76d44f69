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

#ifndef DENSEARRAY_RNG_HPP
#define DENSEARRAY_RNG_HPP

#include <armadillo>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace densearray {

// Seedable generator with explicit substream derivation so that sweeps can
// hand every (scenario, sweep point, realization, attempt) its own
// independent stream and stay byte-reproducible under any worker count.
//
// Gaussians use a hand-rolled Box-Muller transform instead of
// std::normal_distribution, whose algorithm is implementation-defined;
// output is therefore bit-stable across standard libraries.
class SubstreamRng {
  public:
    explicit SubstreamRng(std::uint64_t seed);

    // Hashes a tuple of words into a substream seed (SplitMix64 chain).
    static std::uint64_t derive(std::initializer_list<std::uint64_t> words);

    // Uniform on [0, 1), 53-bit resolution.
    double uniform();

    // Standard normal N(0, 1).
    double gaussian();

    // Circularly symmetric complex normal CN(0, 1): real and imaginary
    // parts are independent N(0, 1/2).
    std::complex<double> complex_gaussian();

    // Column-major fill of IID CN(0, 1) entries.
    arma::cx_mat complex_gaussian_matrix(arma::uword n_rows, arma::uword n_cols);
    arma::cx_vec complex_gaussian_vector(arma::uword n_elem);

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace densearray

#endif
