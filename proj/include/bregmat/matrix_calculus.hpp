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

#ifndef BREGMAT_MATRIX_CALCULUS_HPP
#define BREGMAT_MATRIX_CALCULUS_HPP

#include "bregmat/linalg.hpp"
#include "bregmat/scalar_functions.hpp"

namespace bregmat {

/// f(A), f'(A) or f''(A) through the spectral decomposition of A.
/// Eigenvalues must be > 0; for order 0 and a family continuous at zero,
/// eigenvalues <= 0 (down to -1e-11) map to f(0).
HermitianMatrix matrix_function(const ScalarFunctionFamily& fam, int order,
                                const HermitianMatrix& a);
HermitianMatrix matrix_function(const ScalarFunctionFamily& fam, int order,
                                const SpectralDecomposition& a);

/// Fréchet derivative of the standard matrix function f (order 0) or f'
/// (order 1) at a positive definite A in direction B: the Schur product of
/// the divided-difference kernel with B expressed in A's eigenbasis.
HermitianMatrix frechet_derivative(const ScalarFunctionFamily& fam, int order,
                                   const HermitianMatrix& a,
                                   const HermitianMatrix& b);
HermitianMatrix frechet_derivative(const ScalarFunctionFamily& fam, int order,
                                   const SpectralDecomposition& a,
                                   const HermitianMatrix& b);

/// f''(t L_A + (1 - t) R_A) applied to B, where L_A and R_A are left and
/// right multiplication by A.
HermitianMatrix lr_apply(const ScalarFunctionFamily& fam,
                         const HermitianMatrix& a, double t,
                         const HermitianMatrix& b);
HermitianMatrix lr_apply(const ScalarFunctionFamily& fam,
                         const SpectralDecomposition& a, double t,
                         const HermitianMatrix& b);

/// Same derivative as frechet_derivative, but with each kernel entry
/// computed as int_0^1 g'(t l_i + (1 - t) l_j) dt by adaptive Gauss-Legendre
/// (g = f for order 0, g = f' for order 1). Order 1 needs f''.
HermitianMatrix frechet_derivative_quadrature(const ScalarFunctionFamily& fam,
                                              int order, const HermitianMatrix& a,
                                              const HermitianMatrix& b);

/// Orthonormal basis of the real space of n x n Hermitian matrices with
/// respect to Tr X*Y: E_ii (i ascending), then (E_ij + E_ji)/sqrt2 and then
/// i(E_ij - E_ji)/sqrt2, both over i < j in row-major order.
HermitianMatrix hermitian_basis_element(int n, int index);

/// Coordinates of a Hermitian matrix in that basis (length n^2).
RealVector to_coordinates(const HermitianMatrix& h);
HermitianMatrix from_coordinates(int n, const RealVector& coords);

/// Linear map on n x n Hermitian matrices represented as a real symmetric
/// n^2 x n^2 matrix in the fixed Hermitian basis.
class Superoperator {
 public:
  Superoperator(int n, RealMatrix mat);

  static Superoperator identity(int n);

  int n() const noexcept { return n_; }
  const RealMatrix& matrix() const noexcept { return mat_; }

  HermitianMatrix apply(const HermitianMatrix& h) const;
  /// Ascending eigenvalues of the representing matrix.
  RealVector eigenvalues() const;
  double min_eigenvalue() const;
  double symmetry_residual() const;

  Superoperator operator+(const Superoperator& o) const;
  Superoperator operator-(const Superoperator& o) const;
  Superoperator operator*(double s) const;
  friend Superoperator operator*(double s, const Superoperator& op) {
    return op * s;
  }

 private:
  int n_;
  RealMatrix mat_;
};

/// Matrix of Df'[A] (the Fréchet derivative of f' at A).
Superoperator superoperator_of(const ScalarFunctionFamily& fam,
                               const HermitianMatrix& a);

/// Inverse through the eigendecomposition. Throws ConditioningError when
/// the smallest eigenvalue is not above 1e-12 times the largest.
Superoperator superop_inverse(const Superoperator& s);

}  // namespace bregmat

#endif  // BREGMAT_MATRIX_CALCULUS_HPP
