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

#include <doctest.h>

#include <cmath>
#include <complex>

#include "densearray/array_model.hpp"
#include "densearray/rng.hpp"
#include "oracles.hpp"

using namespace densearray;
using densearray::testing::kPi;

namespace {

arma::cx_mat identity_coupling(arma::uword size)
{
    return arma::cx_mat(arma::eye(size, size), arma::mat(size, size, arma::fill::zeros));
}

// First-principles steering evaluation: element (k, l) on the x/y grid sees
// the phase -2*pi*(a/lambda)*sin(theta)*(k*cos(phi) + l*sin(phi)), with k the
// fast axis of the linear index.
arma::cx_vec steering_by_hand(const ArrayGeometry &geom, const Direction &dir)
{
    arma::cx_vec out(geom.elements());
    for (arma::uword l = 0; l < geom.side; ++l)
        for (arma::uword k = 0; k < geom.side; ++k)
        {
            const double phase = -2.0 * kPi * geom.spacing_over_lambda * std::sin(dir.theta) *
                                 (double(k) * std::cos(dir.phi) + double(l) * std::sin(dir.phi));
            out(k + geom.side * l) = std::polar(1.0, phase);
        }
    return out;
}

double parseval_form(const arma::cx_mat &matrix, const arma::cx_vec &vec)
{
    return std::real(arma::as_scalar(arma::strans(vec) * matrix * arma::conj(vec)));
}

} // namespace

TEST_CASE("steering vector is all ones at broadside")
{
    const ArrayGeometry geom(0.37, 4);
    const arma::cx_vec a = steering_vector(geom, Direction(0.0, 1.1));
    for (arma::uword i = 0; i < a.n_elem; ++i)
        CHECK(a(i) == std::complex<double>(1.0, 0.0));
}

TEST_CASE("steering vector ordering: 2x2 endfire case derived by hand")
{
    // theta = pi/2, phi = pi/2: the cos(phi) (fast) axis sees zero phase,
    // the sin(phi) (slow) axis alternates sign at half-wavelength spacing.
    const ArrayGeometry geom(0.5, 2);
    const arma::cx_vec a = steering_vector(geom, Direction(kPi / 2.0, kPi / 2.0));
    CHECK(a(0).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a(1).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a(2).real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(a(3).real() == doctest::Approx(-1.0).epsilon(1e-12));
    for (arma::uword i = 0; i < 4; ++i)
        CHECK(std::abs(a(i).imag()) < 1e-12);
}

TEST_CASE("steering vector matches the first-principles evaluation")
{
    SubstreamRng rng(11);
    const ArrayGeometry geom(0.31, 5);
    for (int trial = 0; trial < 25; ++trial)
    {
        const Direction dir(rng.uniform() * kPi / 2.0, (2.0 * rng.uniform() - 1.0) * kPi);
        const arma::cx_vec lib = steering_vector(geom, dir);
        const arma::cx_vec hand = steering_by_hand(geom, dir);
        CHECK(arma::abs(lib - hand).max() < 1e-12);
        CHECK(std::abs(std::pow(arma::norm(lib, 2), 2) - double(geom.elements())) < 1e-12);
        CHECK(lib(0) == std::complex<double>(1.0, 0.0));
    }
}

TEST_CASE("element effective area of the cosine pattern")
{
    CHECK(element_effective_area(ElementPattern::cosine, Direction(0.0, 0.0)) == 1.0);
    CHECK(element_effective_area(ElementPattern::cosine, Direction(kPi / 2.0, 0.0)) ==
          doctest::Approx(0.0).epsilon(1e-15));
    CHECK(element_effective_area(ElementPattern::cosine, Direction(kPi / 3.0, 0.0)) ==
          doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("pattern tag parsing")
{
    CHECK(element_pattern_from_string("cosine") == ElementPattern::cosine);
    CHECK_THROWS_AS(element_pattern_from_string("dipole"), std::invalid_argument);
}

TEST_CASE("type invariants are enforced")
{
    CHECK_THROWS_AS(ArrayGeometry(0.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(ArrayGeometry(-0.5, 3), std::invalid_argument);
    CHECK_THROWS_AS(ArrayGeometry(0.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(Direction(-0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Direction(2.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Direction(0.3, 4.0), std::invalid_argument);
}

TEST_CASE("closed form: diagonal equals pi (a/lambda)^2 exactly")
{
    for (double ratio : {0.125, 0.25, 0.5})
    {
        const CouplingMatrix coupling = coupling_matrix_closed_form(ArrayGeometry(ratio, 3));
        const double expected = kPi * ratio * ratio;
        CHECK(arma::abs(arma::real(coupling.entries().diag()) - expected).max() == 0.0);
        CHECK(arma::abs(arma::imag(coupling.entries().diag())).max() == 0.0);
    }
}

TEST_CASE("closed form: nearest-neighbour entry at half-wavelength spacing")
{
    // 0.5 * J1(pi), computed with the integral oracle and frozen.
    const double expected = 0.14230767158987638;
    CHECK(std::abs(0.5 * densearray::testing::bessel_j1_integral(kPi) - expected) < 1e-12);

    const CouplingMatrix coupling = coupling_matrix_closed_form(ArrayGeometry(0.5, 2));
    CHECK(coupling.entries()(1, 0).real() == doctest::Approx(expected).epsilon(1e-11));
    CHECK(coupling.entries()(2, 0).real() == doctest::Approx(expected).epsilon(1e-11));
}

TEST_CASE("closed form: entries vanish with the spacing")
{
    const CouplingMatrix coupling = coupling_matrix_closed_form(ArrayGeometry(1e-4, 3));
    CHECK(arma::abs(coupling.entries()).max() < kPi * 1e-8 * 1.001);
}

TEST_CASE("integral oracle agrees with the closed form")
{
    const ArrayGeometry geom(0.5, 3);
    const arma::cx_mat closed = coupling_matrix_closed_form(geom).entries();
    const arma::cx_mat oracle = coupling_matrix_integral_oracle(geom, 512, 1024).entries();
    CHECK(arma::abs(closed - oracle).max() < 1e-6);
}

TEST_CASE("integral oracle: single element reduces to pi (a/lambda)^2")
{
    const ArrayGeometry geom(0.5, 1);
    const arma::cx_mat oracle = coupling_matrix_integral_oracle(geom, 256, 512).entries();
    CHECK(std::abs(oracle(0, 0).real() - kPi * 0.25) < 1e-6);
}

TEST_CASE("integral oracle: refinement shrinks the error")
{
    const ArrayGeometry geom(0.5, 2);
    const arma::cx_mat closed = coupling_matrix_closed_form(geom).entries();
    const double coarse =
        arma::abs(coupling_matrix_integral_oracle(geom, 128, 256).entries() - closed).max();
    const double fine =
        arma::abs(coupling_matrix_integral_oracle(geom, 256, 512).entries() - closed).max();
    CHECK(fine < coarse);
}

TEST_CASE("gamma constant")
{
    CHECK(gamma_constant(ElementPattern::cosine).gamma == kPi);
    CHECK(std::abs(gamma_constant_quadrature(ElementPattern::cosine, 512, 1024) - kPi) < 1e-9);
    // definitional identity: (lambda/a)^2 * diag(B) recovers gamma
    const CouplingMatrix coupling = coupling_matrix_closed_form(ArrayGeometry(0.25, 2));
    CHECK(coupling.entries()(0, 0).real() / (0.25 * 0.25) ==
          doctest::Approx(kPi).epsilon(1e-14));
}

TEST_CASE("coupling matrix invariants across geometries")
{
    for (auto [ratio, side] : {std::pair<double, arma::uword>{0.5, 5},
                               {0.25, 10},
                               {0.125, 8}})
    {
        const CouplingMatrix coupling = coupling_matrix_closed_form(ArrayGeometry(ratio, side));
        CHECK(coupling.max_eigenvalue() <= 1.0 + 1e-9);
        CHECK(coupling.min_eigenvalue() >= -1e-9);
        CHECK(arma::norm(coupling.entries() - coupling.entries().t(), "fro") == 0.0);
    }
}

TEST_CASE("parseval bound on the quadratic form")
{
    SubstreamRng rng(29);
    const CouplingMatrix coupling = coupling_matrix_closed_form(ArrayGeometry(0.5, 4));
    for (int trial = 0; trial < 1000; ++trial)
    {
        const arma::cx_vec f = rng.complex_gaussian_vector(coupling.size());
        CHECK(parseval_form(coupling.entries(), f) <=
              std::pow(arma::norm(f, 2), 2) + 1e-9);
    }
}

TEST_CASE("passivity fault injection is caught")
{
    const CouplingMatrix coupling = coupling_matrix_closed_form(ArrayGeometry(0.5, 5));
    CHECK_THROWS_AS(CouplingMatrix::from_entries(1.01 / coupling.max_eigenvalue() *
                                                 coupling.entries()),
                    model_error);
    CHECK_THROWS_AS(CouplingMatrix::from_entries(-0.1 * identity_coupling(4)), model_error);
}

TEST_CASE("impedance relation: matched resistive load gives identity coupling")
{
    const arma::uword size = 6;
    const arma::cx_mat matched = 3.7 * identity_coupling(size);
    const CouplingMatrix coupling = coupling_from_impedance(matched, 3.7);
    CHECK(arma::abs(coupling.entries() - identity_coupling(size)).max() < 1e-12);
}

TEST_CASE("impedance relation: pure reactance radiates nothing")
{
    arma::cx_mat reactive(4, 4, arma::fill::zeros);
    reactive.diag().fill(std::complex<double>(0.0, 11.0));
    reactive(0, 1) = reactive(1, 0) = std::complex<double>(0.0, -2.5);
    const CouplingMatrix coupling = coupling_from_impedance(reactive, 1.0);
    CHECK(arma::abs(coupling.entries()).max() == 0.0);
}

TEST_CASE("impedance relation: random passive networks stay passive")
{
    SubstreamRng rng(37);
    for (int trial = 0; trial < 100; ++trial)
    {
        const arma::uword size = 6;
        const arma::cx_mat g = rng.complex_gaussian_matrix(size, size);
        const arma::cx_mat x = rng.complex_gaussian_matrix(size, size);
        const arma::cx_mat impedance =
            g * g.t() + std::complex<double>(0.0, 1.0) * 0.5 * (x + x.t());
        const CouplingMatrix coupling = coupling_from_impedance(impedance, 0.8);
        CHECK(coupling.max_eigenvalue() <= 1.0 + 1e-9);
        CHECK(coupling.min_eigenvalue() >= -1e-9);
    }
}

TEST_CASE("impedance relation: non-passive network rejected")
{
    const arma::cx_mat lossy = -2.0 * identity_coupling(3);
    CHECK_THROWS_AS(coupling_from_impedance(lossy, 1.0), model_error);
    CHECK_THROWS_AS(coupling_from_impedance(identity_coupling(3), 0.0), std::invalid_argument);
}

TEST_CASE("null-space projector: identity coupling leaves no null space")
{
    const CouplingMatrix coupling = CouplingMatrix::from_entries(identity_coupling(5));
    const arma::cx_mat projector = null_space_projector(coupling, 0.01);
    CHECK(arma::abs(projector).max() < 1e-12);
    CHECK_THROWS_AS(null_space_leakage(coupling, projector), model_error);
}

TEST_CASE("null-space projector: zero coupling is all null space")
{
    const CouplingMatrix coupling =
        CouplingMatrix::from_entries(arma::cx_mat(5, 5, arma::fill::zeros));
    const arma::cx_mat projector = null_space_projector(coupling, 0.01);
    CHECK(arma::abs(projector - identity_coupling(5)).max() < 1e-12);
    CHECK(null_space_leakage(coupling, projector) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("null-space projector: eigenvalue map stays in (-1, 1]")
{
    const CouplingMatrix coupling = coupling_matrix_closed_form(ArrayGeometry(0.25, 6));
    const arma::cx_mat projector = null_space_projector(coupling, 0.01);
    arma::vec eigs;
    REQUIRE(arma::eig_sym(eigs, projector));
    CHECK(eigs.max() <= 1.0 + 1e-12);
    CHECK(eigs.min() > -1.0);
    CHECK_THROWS_AS(null_space_projector(coupling, 0.0), std::invalid_argument);
}

TEST_CASE("null-space leakage is small for a dense fixed-aperture array")
{
    // side 20 at lambda/8 spacing: 2.5 lambda aperture, heavy oversampling
    const CouplingMatrix coupling = coupling_matrix_closed_form(ArrayGeometry(0.125, 20));
    const double leakage =
        null_space_leakage(coupling, null_space_projector(coupling, 0.01));
    CHECK(leakage >= 0.0);
    CHECK(leakage < 0.02);
}

TEST_CASE("effective rank tracks the aperture degrees of freedom")
{
    // fixed 2.5-lambda aperture: about 4 (a/lambda)^2 M = 25 strong modes
    for (arma::uword side : {arma::uword(5), arma::uword(10)})
    {
        const double spacing = 2.5 / double(side);
        const CouplingMatrix coupling =
            coupling_matrix_closed_form(ArrayGeometry(spacing, side));
        const double threshold = 0.01 * coupling.max_eigenvalue();
        const double count = double(arma::accu(coupling.eigenvalues() > threshold));
        const double expected = 4.0 * spacing * spacing * double(side * side);
        CHECK(count >= 0.5 * expected);
        CHECK(count <= 2.0 * expected);
    }
}
