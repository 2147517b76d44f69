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

#include "densearray/bessel.hpp"

#include <cmath>

namespace densearray {

namespace {

// J1(x) = sum_k (-1)^k (x/2)^(2k+1) / (k! (k+1)!). Cancellation costs about
// four digits near the series/asymptotic switch point, still well below the
// target accuracy.
double j1_series(double x)
{
    const double half = 0.5 * x;
    const double half_sq = half * half;
    double term = half; // k = 0
    double sum = term;
    for (int k = 1; k < 64; ++k)
    {
        term *= -half_sq / (static_cast<double>(k) * static_cast<double>(k + 1));
        sum += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum)))
            break;
    }
    return sum;
}

// Hankel expansion J1(x) = sqrt(2/(pi x)) (P cos(chi) - Q sin(chi)),
// chi = x - 3 pi / 4. Terms are summed until they stop decreasing, which
// gives near-optimal truncation for x >= 12.
double j1_asymptotic(double x)
{
    const double mu = 4.0; // 4 * nu^2 for nu = 1
    double p_sum = 1.0;
    double q_sum = 0.0;
    double term = 1.0;
    double prev_mag = 1.0;
    for (int m = 1; m < 40; ++m)
    {
        const double odd = 2.0 * m - 1.0;
        term *= (mu - odd * odd) / (8.0 * x * static_cast<double>(m));
        const double mag = std::abs(term);
        if (mag >= prev_mag) // divergent tail reached
            break;
        prev_mag = mag;
        switch (m % 4)
        {
        case 1: q_sum += term; break;
        case 2: p_sum -= term; break;
        case 3: q_sum -= term; break;
        default: p_sum += term; break;
        }
        if (mag < 1e-18)
            break;
    }
    const double chi = x - 2.356194490192344929; // 3 pi / 4
    return std::sqrt(2.0 / (3.14159265358979323846 * x)) *
           (p_sum * std::cos(chi) - q_sum * std::sin(chi));
}

} // namespace

double bessel_j1(double x)
{
    const double ax = std::abs(x);
    const double value = (ax < 12.0) ? j1_series(ax) : j1_asymptotic(ax);
    return (x < 0.0) ? -value : value; // J1 is odd
}

} // namespace densearray
