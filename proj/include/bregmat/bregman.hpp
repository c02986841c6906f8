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

#ifndef BREGMAT_BREGMAN_HPP
#define BREGMAT_BREGMAN_HPP

#include <array>
#include <optional>
#include <string>

#include "bregmat/linalg.hpp"
#include "bregmat/scalar_functions.hpp"

namespace bregmat {

/// Independent evaluation routes of the trace Bregman divergence.
enum class Method {
  kClosed,      // Tr f(X) - Tr f(Y) - Tr f'(Y)(X - Y)
  kEigen,       // double sum over eigenpairs weighted by |<phi_j|psi_k>|^2
  kIntegral1d,  // int_0^1 (1-s) Tr (X-Y) Df'[Y + s(X-Y)](X-Y) ds
  kIntegral2d,  // the same with Df' written as int_0^1 f''(tL + (1-t)R) dt
};

inline constexpr std::array<Method, 4> kAllMethods = {
    Method::kClosed, Method::kEigen, Method::kIntegral1d, Method::kIntegral2d};

std::string to_string(Method m);
/// "closed", "eigen", "integral-1d", "integral-2d"; std::invalid_argument otherwise.
Method parse_method(const std::string& name);

struct DivergenceValue {
  double value = 0.0;  // +infinity is a legitimate value
  Method method = Method::kClosed;
  std::optional<double> residual_to_closed;

  bool is_infinite() const noexcept;
};

/// H_f(X, Y) for positive definite X and Y of equal dimension.
/// DomainError when either argument is not positive definite.
DivergenceValue bregman(const ScalarFunctionFamily& fam,
                        const HermitianMatrix& x, const HermitianMatrix& y,
                        Method method = Method::kClosed);

/// All four methods, each carrying its residual against the closed form.
std::array<DivergenceValue, 4> bregman_all_methods(
    const ScalarFunctionFamily& fam, const HermitianMatrix& x,
    const HermitianMatrix& y);

/// Eigenvalues at or below this are treated as exact zeros by
/// bregman_extended.
inline constexpr double kSingularEigenvalue = 1e-11;
/// Overlap weights |<phi_j|psi_k>|^2 at or below this count as orthogonal.
inline constexpr double kOverlapThreshold = 1e-16;

/// Continuous extension of H_f to positive semidefinite arguments: the
/// eps -> 0 limit of H_f(X + eps I, Y + eps I), evaluated term by term on
/// the eigen-expansion. Returns +infinity when ker Y is not contained in
/// ker X and f'(0+) = -infinity. UnsupportedError if f is not continuous
/// at zero; DomainError for inputs that are not PSD.
DivergenceValue bregman_extended(const ScalarFunctionFamily& fam,
                                 const HermitianMatrix& x,
                                 const HermitianMatrix& y);

/// Tr B^q + (Tr A^q - q Tr A B^(q-1)) / (q - 1), q != 1, A and B positive
/// definite.
double tsallis_closed_form(double q, const HermitianMatrix& a,
                           const HermitianMatrix& b);

}  // namespace bregmat

#endif  // BREGMAT_BREGMAN_HPP
