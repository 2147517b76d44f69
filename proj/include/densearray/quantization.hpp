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

#ifndef DENSEARRAY_QUANTIZATION_HPP
#define DENSEARRAY_QUANTIZATION_HPP

#include <armadillo>

#include "densearray/types.hpp"

namespace densearray {

// Element-wise complex sign quantizer with per-element rescaling:
//   out_i = sqrt(rescale_i / 2) * (sign(Re x_i) + j sign(Im x_i)).
// sign(0) is +1 (deterministic tie-break; a measure-zero event for
// continuous inputs). Every output entry has squared magnitude rescale_i.
arma::cx_vec one_bit_quantize(const arma::cx_vec &input, const arma::vec &rescale);

// Arcsine law: covariance of the rescaled sign quantizer driven by zero-mean
// complex Gaussian input with covariance input_cov and diagonal rescale
// (which must equal the diagonal of input_cov):
//   C_out = (2/pi) D^(1/2) [asin(Re corr) + j asin(Im corr)] D^(1/2),
// asin applied entrywise to the normalized correlations. The diagonal of the
// result equals rescale identically. Normalized correlations above 1 in
// magnitude by more than 1e-12 raise model_error; smaller excursions are
// clamped (roundoff on valid PSD inputs).
arma::cx_mat arcsine_covariance(const arma::cx_mat &input_cov, const arma::vec &rescale);

// Bussgang decomposition of the quantizer output covariance into the scaled
// linear replica (2/pi) C_in and the uncorrelated distortion remainder.
// The distortion diagonal is (1 - 2/pi) * rescale.
struct BussgangSplit {
    arma::cx_mat signal_cov;
    arma::cx_mat distortion_cov;
};

BussgangSplit bussgang_split(const arma::cx_mat &input_cov, const arma::vec &rescale);

// Diagonal-only (uncorrelated quantization noise) approximation of the
// distortion covariance: (1 - 2/pi) * rescale. Exact when the input
// covariance is diagonal.
arma::vec uqn_distortion(const arma::vec &rescale);

// Bundle of the second-order statistics of one quantized link.
struct QuantizedLinkStats {
    arma::cx_mat input_cov;  // C_y
    arma::vec rescale;       // D = diag(C_y)
    arma::cx_mat output_cov; // arcsine law
    arma::cx_mat cross_cov;  // E[y_Q y^H] = sqrt(2/pi) C_y
    double bussgang_gain;    // sqrt(2/pi), uniform under this rescaling
};

QuantizedLinkStats analyze_quantized_link(const arma::cx_mat &input_cov);

} // namespace densearray

#endif
