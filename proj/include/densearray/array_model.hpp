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

#ifndef DENSEARRAY_ARRAY_MODEL_HPP
#define DENSEARRAY_ARRAY_MODEL_HPP

#include <armadillo>

#include "densearray/types.hpp"

namespace densearray {

// Hermitian PSD coupling matrix of a planar array. Construction symmetrizes
// the entries, eigendecomposes them and certifies
//
//   * positive semidefiniteness: min eigenvalue >= -eig_tolerance
//   * passivity:                 max eigenvalue <=  1 + eig_tolerance
//
// so every instance in circulation is a physically admissible model. The
// eigendecomposition and the PSD square root are cached; instances are
// immutable and safe to share across threads.
class CouplingMatrix {
  public:
    static CouplingMatrix from_entries(arma::cx_mat entries, double eig_tolerance = 1e-9);

    const arma::cx_mat &entries() const { return entries_; }
    const arma::vec &eigenvalues() const { return eigenvalues_; } // ascending
    const arma::cx_mat &eigenvectors() const { return eigenvectors_; }

    // Hermitian PSD square root; eigenvalues are clamped at zero before the
    // root so roundoff-negative values cannot produce NaNs.
    const arma::cx_mat &square_root() const { return square_root_; }

    arma::uword size() const { return entries_.n_rows; }
    double min_eigenvalue() const { return eigenvalues_.front(); }
    double max_eigenvalue() const { return eigenvalues_.back(); }

  private:
    CouplingMatrix() = default;

    arma::cx_mat entries_;
    arma::vec eigenvalues_;
    arma::cx_mat eigenvectors_;
    arma::cx_mat square_root_;
};

// Normalized beam solid angle of the element pattern,
// integral of A_e / a^2 over the visible hemisphere. Equals pi for the
// cosine pattern.
struct PatternConstant {
    double gamma;
};

// Far-field steering vector of the side x side planar array. The linear
// element index runs fastest along the x axis (the cos(phi) phase
// progression) and the result is the Kronecker product of the two
// single-axis progressions with phases -2*pi*(a/lambda)*n*sin(theta)*sin(phi)
// and -2*pi*(a/lambda)*n*sin(theta)*cos(phi), n = 0..side-1.
arma::cx_vec steering_vector(const ArrayGeometry &geometry, const Direction &direction);

// Element effective area as a multiple of a^2 (cos(theta) for the cosine
// pattern). The a^2 factor is carried symbolically via a/lambda wherever the
// area enters a formula.
double element_effective_area(ElementPattern pattern, const Direction &direction);

// Coupling matrix in closed form: pi*(a/lambda)^2 on the diagonal and
// (a/lambda) * J1(2*pi*(a/lambda)*d) / d off the diagonal, d the element
// distance in units of the spacing a.
CouplingMatrix coupling_matrix_closed_form(const ArrayGeometry &geometry);

// Brute-force counterpart of the closed form: midpoint tensor-grid
// quadrature of (a/lambda)^2 * cos(theta) * a(theta,phi) a(theta,phi)^H *
// sin(theta) over the visible hemisphere. Serves as the independent oracle
// for the closed form; the default grid keeps the entrywise error below 1e-6
// for the tested geometries.
CouplingMatrix coupling_matrix_integral_oracle(const ArrayGeometry &geometry,
                                               arma::uword theta_points = 512,
                                               arma::uword phi_points = 1024);

PatternConstant gamma_constant(ElementPattern pattern);

// Quadrature cross-check of gamma_constant on the same midpoint grid as the
// coupling-matrix oracle.
double gamma_constant_quadrature(ElementPattern pattern, arma::uword theta_points = 512,
                                 arma::uword phi_points = 1024);

// Coupling matrix of an antenna network with impedance matrix Z terminated
// into resistive loads R0:
//   B = (R0 I + Z)^-1 * 4 Re{Z} R0 * (R0 I + Z)^-H
// Requires the Hermitian part of Z to be PSD (passive network); the result
// then satisfies the B <= I certificate by construction.
CouplingMatrix coupling_from_impedance(const arma::cx_mat &impedance,
                                       double reference_resistance);

// Projector onto the approximate null space of the coupling matrix,
//   U = I - (1 + delta) B^(1/2) (B + delta I)^-1 B^(1/2),
// computed through the cached eigendecomposition: eigenvalue mu maps to
// 1 - (1 + delta) mu / (mu + delta), close to 1 for mu << delta and of
// magnitude <= delta for mu >> delta.
arma::cx_mat null_space_projector(const CouplingMatrix &coupling, double delta);

// tr(U^H B U) / tr(U^H U): fraction of power an excitation confined to the
// projector's range still radiates. Throws model_error when U vanishes
// (coupling matrix effectively full rank at this delta).
double null_space_leakage(const CouplingMatrix &coupling, const arma::cx_mat &projector);

} // namespace densearray

#endif
