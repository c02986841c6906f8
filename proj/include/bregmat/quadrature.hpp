// Copyright 2026 The bregmat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BREGMAT_QUADRATURE_HPP
#define BREGMAT_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace bregmat {

/// Number of nodes of the panel rule used by every integral representation.
inline constexpr int kQuadratureNodes = 64;

struct QuadratureRule {
  std::vector<double> nodes;    // on [0, 1], ascending
  std::vector<double> weights;  // sum to 1
};

/// n-point Gauss-Legendre rule mapped to [0, 1] (Newton iteration on P_n).
QuadratureRule gauss_legendre(int n);

/// The cached 64-node rule.
const QuadratureRule& default_rule();

/// Single-panel 64-node Gauss-Legendre estimate of the integral over [a, b].
double integrate_fixed(const std::function<double(double)>& g, double a,
                       double b);

/// Panel-bisection Gauss-Legendre integration over [a, b].
///
/// A panel is accepted when its 64-node estimate agrees with the sum of the
/// estimates on its two halves to within `tolerance`; otherwise both halves
/// are refined independently. Deterministic for a given integrand.
/// `max_depth` bounds the bisection depth.
double integrate(const std::function<double(double)>& g, double a, double b,
                 double tolerance = 1e-13, int max_depth = 16);

}  // namespace bregmat

#endif  // BREGMAT_QUADRATURE_HPP
