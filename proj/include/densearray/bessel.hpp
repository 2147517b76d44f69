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

#ifndef DENSEARRAY_BESSEL_HPP
#define DENSEARRAY_BESSEL_HPP

namespace densearray {

// Bessel function of the first kind, order one. Power series for small
// arguments, Hankel asymptotic expansion beyond; absolute error below
// ~1e-11 over the argument range reached by the coupling-matrix entries.
double bessel_j1(double x);

} // namespace densearray

#endif
