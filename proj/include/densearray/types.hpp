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

#ifndef DENSEARRAY_TYPES_HPP
#define DENSEARRAY_TYPES_HPP

#include <armadillo>
#include <stdexcept>
#include <string>

namespace densearray {

// Thrown when a computed quantity violates a physical-consistency requirement
// (passivity, positive semidefiniteness, rank, degenerate covariances).
// Invalid user input is reported via std::invalid_argument instead.
class model_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Embedded element radiation pattern. Only the cosine pattern (uniformly
// illuminated aperture) is implemented; the tag keeps the pattern pluggable.
enum class ElementPattern { cosine };

ElementPattern element_pattern_from_string(const std::string &name);
const char *to_string(ElementPattern pattern);

// Far-field direction, elevation measured from broadside.
struct Direction {
    double theta; // elevation (aspect) angle, [0, pi/2]
    double phi;   // azimuth angle, [-pi, pi]

    Direction(double theta_rad, double phi_rad);
};

// Square planar array. All physics depends on the spacing only through the
// ratio a/lambda, so no absolute frequency is carried anywhere.
struct ArrayGeometry {
    double spacing_over_lambda; // a/lambda > 0
    arma::uword side;           // sqrt(M) >= 1
    ElementPattern pattern;

    ArrayGeometry(double spacing_over_lambda, arma::uword side,
                  ElementPattern pattern = ElementPattern::cosine);

    arma::uword elements() const { return side * side; }
};

} // namespace densearray

#endif
