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

#include "densearray/array_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "densearray/bessel.hpp"

namespace densearray {

namespace {

constexpr double kPi = 3.14159265358979323846;

arma::cx_mat hermitize(const arma::cx_mat &m)
{
    return 0.5 * (m + m.t());
}

} // namespace

ElementPattern element_pattern_from_string(const std::string &name)
{
    if (name == "cosine")
        return ElementPattern::cosine;
    throw std::invalid_argument("unsupported element pattern '" + name +
                                "' (supported: cosine)");
}

const char *to_string(ElementPattern pattern)
{
    switch (pattern)
    {
    case ElementPattern::cosine:
        return "cosine";
    }
    throw std::invalid_argument("unsupported element pattern tag");
}

Direction::Direction(double theta_rad, double phi_rad) : theta(theta_rad), phi(phi_rad)
{
    if (!(theta >= 0.0 && theta <= kPi / 2.0))
        throw std::invalid_argument("direction: theta must lie in [0, pi/2]");
    if (!(phi >= -kPi && phi <= kPi))
        throw std::invalid_argument("direction: phi must lie in [-pi, pi]");
}

ArrayGeometry::ArrayGeometry(double spacing, arma::uword side_count, ElementPattern pat)
    : spacing_over_lambda(spacing), side(side_count), pattern(pat)
{
    if (!(spacing_over_lambda > 0.0))
        throw std::invalid_argument("array geometry: spacing a/lambda must be positive");
    if (side < 1)
        throw std::invalid_argument("array geometry: side count must be at least 1");
}

CouplingMatrix CouplingMatrix::from_entries(arma::cx_mat entries, double eig_tolerance)
{
    if (entries.n_rows != entries.n_cols)
        throw std::invalid_argument("coupling matrix: entries must be square");
    if (entries.n_rows == 0)
        throw std::invalid_argument("coupling matrix: entries must be non-empty");

    CouplingMatrix out;
    out.entries_ = hermitize(entries);

    if (!arma::eig_sym(out.eigenvalues_, out.eigenvectors_, out.entries_))
        throw model_error("coupling matrix: eigendecomposition failed");

    if (out.min_eigenvalue() < -eig_tolerance)
    {
        std::ostringstream msg;
        msg << "coupling matrix: not positive semidefinite (min eigenvalue "
            << out.min_eigenvalue() << ")";
        throw model_error(msg.str());
    }
    if (out.max_eigenvalue() > 1.0 + eig_tolerance)
    {
        std::ostringstream msg;
        msg << "coupling matrix: passivity violated (max eigenvalue " << out.max_eigenvalue()
            << " exceeds 1)";
        throw model_error(msg.str());
    }

    arma::vec clamped = arma::clamp(out.eigenvalues_, 0.0, arma::datum::inf);
    out.square_root_ =
        hermitize(out.eigenvectors_ * arma::diagmat(arma::sqrt(clamped)) * out.eigenvectors_.t());
    return out;
}

arma::cx_vec steering_vector(const ArrayGeometry &geometry, const Direction &direction)
{
    const arma::uword side = geometry.side;
    const double rate = -2.0 * kPi * geometry.spacing_over_lambda * std::sin(direction.theta);
    const double step_x = rate * std::cos(direction.phi); // fast axis
    const double step_y = rate * std::sin(direction.phi); // slow axis

    arma::cx_vec axis_x(side), axis_y(side);
    for (arma::uword n = 0; n < side; ++n)
    {
        axis_x(n) = std::polar(1.0, step_x * static_cast<double>(n));
        axis_y(n) = std::polar(1.0, step_y * static_cast<double>(n));
    }

    arma::cx_vec out(side * side);
    for (arma::uword l = 0; l < side; ++l)
        for (arma::uword k = 0; k < side; ++k)
            out(k + side * l) = axis_y(l) * axis_x(k);
    return out;
}

double element_effective_area(ElementPattern pattern, const Direction &direction)
{
    switch (pattern)
    {
    case ElementPattern::cosine:
        return std::cos(direction.theta);
    }
    throw std::invalid_argument("unsupported element pattern tag");
}

CouplingMatrix coupling_matrix_closed_form(const ArrayGeometry &geometry)
{
    if (geometry.pattern != ElementPattern::cosine)
        throw std::invalid_argument("coupling matrix closed form requires the cosine pattern");

    const arma::uword side = geometry.side;
    const arma::uword m = geometry.elements();
    const double ratio = geometry.spacing_over_lambda;

    // Entries depend on the index offsets only; tabulate one quadrant.
    arma::mat offset_value(side, side);
    offset_value(0, 0) = kPi * ratio * ratio;
    for (arma::uword dl = 0; dl < side; ++dl)
        for (arma::uword dk = 0; dk < side; ++dk)
        {
            if (dk == 0 && dl == 0)
                continue;
            const double dist = std::hypot(static_cast<double>(dk), static_cast<double>(dl));
            offset_value(dk, dl) = ratio * bessel_j1(2.0 * kPi * ratio * dist) / dist;
        }

    arma::mat real_entries(m, m);
    for (arma::uword q = 0; q < m; ++q)
    {
        const arma::uword kq = q % side, lq = q / side;
        for (arma::uword p = 0; p < m; ++p)
        {
            const arma::uword kp = p % side, lp = p / side;
            const arma::uword dk = kp > kq ? kp - kq : kq - kp;
            const arma::uword dl = lp > lq ? lp - lq : lq - lp;
            real_entries(p, q) = offset_value(dk, dl);
        }
    }

    return CouplingMatrix::from_entries(
        arma::cx_mat(real_entries, arma::mat(m, m, arma::fill::zeros)));
}

CouplingMatrix coupling_matrix_integral_oracle(const ArrayGeometry &geometry,
                                               arma::uword theta_points, arma::uword phi_points)
{
    if (theta_points < 1 || phi_points < 1)
        throw std::invalid_argument("integral oracle: grid sizes must be positive");

    const arma::uword m = geometry.elements();
    const double ratio = geometry.spacing_over_lambda;
    const double theta_step = (kPi / 2.0) / static_cast<double>(theta_points);
    const double phi_step = (2.0 * kPi) / static_cast<double>(phi_points);

    arma::cx_mat acc(m, m, arma::fill::zeros);
    arma::cx_mat block(m, phi_points);
    for (arma::uword i = 0; i < theta_points; ++i)
    {
        const double theta = (static_cast<double>(i) + 0.5) * theta_step;
        const double area = element_effective_area(geometry.pattern, Direction(theta, 0.0));
        const double weight =
            ratio * ratio * area * std::sin(theta) * theta_step * phi_step;
        for (arma::uword j = 0; j < phi_points; ++j)
        {
            const double phi = -kPi + (static_cast<double>(j) + 0.5) * phi_step;
            block.col(j) = steering_vector(geometry, Direction(theta, phi));
        }
        acc += weight * (block * block.t());
    }
    return CouplingMatrix::from_entries(std::move(acc));
}

PatternConstant gamma_constant(ElementPattern pattern)
{
    switch (pattern)
    {
    case ElementPattern::cosine:
        return {kPi};
    }
    throw std::invalid_argument("unsupported element pattern tag");
}

double gamma_constant_quadrature(ElementPattern pattern, arma::uword theta_points,
                                 arma::uword phi_points)
{
    const double theta_step = (kPi / 2.0) / static_cast<double>(theta_points);
    const double phi_step = (2.0 * kPi) / static_cast<double>(phi_points);
    double acc = 0.0;
    for (arma::uword i = 0; i < theta_points; ++i)
    {
        const double theta = (static_cast<double>(i) + 0.5) * theta_step;
        acc += element_effective_area(pattern, Direction(theta, 0.0)) * std::sin(theta);
    }
    return acc * theta_step * phi_step * static_cast<double>(phi_points);
}

CouplingMatrix coupling_from_impedance(const arma::cx_mat &impedance,
                                       double reference_resistance)
{
    if (impedance.n_rows != impedance.n_cols || impedance.n_rows == 0)
        throw std::invalid_argument("impedance matrix must be square and non-empty");
    if (!(reference_resistance > 0.0))
        throw std::invalid_argument("reference resistance must be positive");

    const arma::cx_mat resistive = hermitize(impedance);
    arma::vec resistive_eigs;
    if (!arma::eig_sym(resistive_eigs, resistive))
        throw model_error("impedance matrix: eigendecomposition failed");
    const double scale = std::max(1.0, std::abs(resistive_eigs.back()));
    if (resistive_eigs.front() < -1e-9 * scale)
    {
        std::ostringstream msg;
        msg << "impedance matrix is not passive (Hermitian part has eigenvalue "
            << resistive_eigs.front() << ")";
        throw model_error(msg.str());
    }

    const arma::uword m = impedance.n_rows;
    const arma::cx_mat loaded =
        reference_resistance * arma::cx_mat(arma::eye(m, m), arma::mat(m, m, arma::fill::zeros)) +
        impedance;

    arma::cx_mat half; // (R0 I + Z)^-1 * 4 R0 Re{Z}
    if (!arma::solve(half, loaded, 4.0 * reference_resistance * resistive,
                     arma::solve_opts::no_approx))
        throw model_error("antenna network is singular: R0 I + Z not invertible");
    arma::cx_mat full; // half * (R0 I + Z)^-H  via  ((R0 I + Z)^-1 half^H)^H
    if (!arma::solve(full, loaded, half.t(), arma::solve_opts::no_approx))
        throw model_error("antenna network is singular: R0 I + Z not invertible");

    return CouplingMatrix::from_entries(full.t());
}

arma::cx_mat null_space_projector(const CouplingMatrix &coupling, double delta)
{
    if (!(delta > 0.0))
        throw std::invalid_argument("null space projector: delta must be positive");

    arma::vec mapped(coupling.size());
    for (arma::uword i = 0; i < coupling.size(); ++i)
    {
        const double mu = std::max(coupling.eigenvalues()(i), 0.0);
        mapped(i) = 1.0 - (1.0 + delta) * mu / (mu + delta);
    }
    return hermitize(coupling.eigenvectors() * arma::diagmat(mapped) *
                     coupling.eigenvectors().t());
}

double null_space_leakage(const CouplingMatrix &coupling, const arma::cx_mat &projector)
{
    if (projector.n_rows != coupling.size() || projector.n_cols != coupling.size())
        throw std::invalid_argument("null space leakage: projector size mismatch");

    const double denom = std::pow(arma::norm(projector, "fro"), 2);
    if (denom <= 1e-20)
        throw model_error("null space leakage: projector vanishes "
                          "(coupling matrix is full rank at this delta)");
    const double numer =
        std::real(arma::accu(arma::conj(projector) % (coupling.entries() * projector)));
    return numer / denom;
}

} // namespace densearray
