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

#include "densearray/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace densearray {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoOverPi = 0.63661977236758134308;
constexpr double kCorrelationSlack = 1e-12;

double sign_with_positive_zero(double v)
{
    return v < 0.0 ? -1.0 : 1.0;
}

double clamped_asin(double correlation, arma::uword row, arma::uword col)
{
    if (std::abs(correlation) > 1.0 + kCorrelationSlack)
    {
        std::ostringstream msg;
        msg << "arcsine law: normalized correlation at (" << row << ", " << col << ") is "
            << correlation << ", not a valid covariance";
        throw model_error(msg.str());
    }
    return std::asin(std::clamp(correlation, -1.0, 1.0));
}

void check_rescale(const arma::cx_mat &input_cov, const arma::vec &rescale)
{
    if (input_cov.n_rows != input_cov.n_cols)
        throw std::invalid_argument("arcsine law: covariance must be square");
    if (rescale.n_elem != input_cov.n_rows)
        throw std::invalid_argument("arcsine law: rescale diagonal size mismatch");
    if (rescale.n_elem == 0 || rescale.min() <= 0.0)
        throw std::invalid_argument("arcsine law: rescale diagonal must be strictly positive");
}

} // namespace

arma::cx_vec one_bit_quantize(const arma::cx_vec &input, const arma::vec &rescale)
{
    if (input.n_elem != rescale.n_elem)
        throw std::invalid_argument("one-bit quantizer: rescale diagonal size mismatch");
    if (rescale.n_elem == 0 || rescale.min() <= 0.0)
        throw std::invalid_argument("one-bit quantizer: rescale diagonal must be positive");

    arma::cx_vec out(input.n_elem);
    for (arma::uword i = 0; i < input.n_elem; ++i)
    {
        const double amplitude = std::sqrt(rescale(i) / 2.0);
        out(i) = {amplitude * sign_with_positive_zero(input(i).real()),
                  amplitude * sign_with_positive_zero(input(i).imag())};
    }
    return out;
}

arma::cx_mat arcsine_covariance(const arma::cx_mat &input_cov, const arma::vec &rescale)
{
    check_rescale(input_cov, rescale);

    const arma::uword m = input_cov.n_rows;
    arma::cx_mat out(m, m);
    for (arma::uword i = 0; i < m; ++i)
        out(i, i) = rescale(i); // asin(1) cancels the 2/pi identically
    for (arma::uword j = 0; j < m; ++j)
        for (arma::uword i = j + 1; i < m; ++i)
        {
            const double scale = std::sqrt(rescale(i) * rescale(j));
            const double re = clamped_asin(input_cov(i, j).real() / scale, i, j);
            const double im = clamped_asin(input_cov(i, j).imag() / scale, i, j);
            const std::complex<double> value =
                kTwoOverPi * scale * std::complex<double>(re, im);
            out(i, j) = value;
            out(j, i) = std::conj(value);
        }
    return out;
}

BussgangSplit bussgang_split(const arma::cx_mat &input_cov, const arma::vec &rescale)
{
    arma::cx_mat output_cov = arcsine_covariance(input_cov, rescale);
    arma::cx_mat signal_cov = kTwoOverPi * input_cov;
    return {signal_cov, output_cov - signal_cov};
}

arma::vec uqn_distortion(const arma::vec &rescale)
{
    if (rescale.n_elem == 0 || rescale.min() <= 0.0)
        throw std::invalid_argument("uqn distortion: rescale diagonal must be positive");
    return (1.0 - kTwoOverPi) * rescale;
}

QuantizedLinkStats analyze_quantized_link(const arma::cx_mat &input_cov)
{
    if (input_cov.n_rows != input_cov.n_cols || input_cov.n_rows == 0)
        throw std::invalid_argument("quantized link: covariance must be square and non-empty");

    arma::vec rescale = arma::real(input_cov.diag());
    if (rescale.min() <= 0.0)
        throw std::invalid_argument("quantized link: covariance diagonal must be positive");

    const double gain = std::sqrt(2.0 / kPi);
    QuantizedLinkStats stats;
    stats.input_cov = input_cov;
    stats.rescale = std::move(rescale);
    stats.output_cov = arcsine_covariance(input_cov, stats.rescale);
    stats.cross_cov = gain * input_cov;
    stats.bussgang_gain = gain;
    return stats;
}

} // namespace densearray
