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

#include "bregmat/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "bregmat/errors.hpp"

namespace bregmat {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw ContractViolation("gauss_legendre: n must be >= 1");
  QuadratureRule rule;
  rule.nodes.assign(static_cast<size_t>(n), 0.0);
  rule.weights.assign(static_cast<size_t>(n), 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) <= 1e-16) break;
    }
    // z is the i-th largest root on [-1, 1]; map to [0, 1].
    const double w = 1.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[static_cast<size_t>(i)] = 0.5 * (1.0 - z);
    rule.nodes[static_cast<size_t>(n - 1 - i)] = 0.5 * (1.0 + z);
    rule.weights[static_cast<size_t>(i)] = w;
    rule.weights[static_cast<size_t>(n - 1 - i)] = w;
  }
  return rule;
}

const QuadratureRule& default_rule() {
  static const QuadratureRule rule = gauss_legendre(kQuadratureNodes);
  return rule;
}

double integrate_fixed(const std::function<double(double)>& g, double a,
                       double b) {
  const QuadratureRule& rule = default_rule();
  const double h = b - a;
  double sum = 0.0;
  for (size_t k = 0; k < rule.nodes.size(); ++k)
    sum += rule.weights[k] * g(a + h * rule.nodes[k]);
  return h * sum;
}

namespace {

double refine(const std::function<double(double)>& g, double a, double b,
              double whole, double tolerance, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = integrate_fixed(g, a, mid);
  const double right = integrate_fixed(g, mid, b);
  if (depth <= 0 || std::abs(whole - (left + right)) <= tolerance)
    return left + right;
  return refine(g, a, mid, left, tolerance, depth - 1) +
         refine(g, mid, b, right, tolerance, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& g, double a, double b,
                 double tolerance, int max_depth) {
  const double whole = integrate_fixed(g, a, b);
  // Fixed per-panel tolerance relative to the first estimate; halving it per
  // level would chase the rounding floor.
  const double tol = tolerance * std::max(1.0, std::abs(whole));
  return refine(g, a, b, whole, tol, max_depth);
}

}  // namespace bregmat
