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

#include "bregmat/matrix_calculus.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bregmat/errors.hpp"
#include "bregmat/quadrature.hpp"

namespace bregmat {

namespace {

constexpr double kZeroEigenvalue = 1e-11;
constexpr double kConditioningFloor = 1e-12;

void require_positive_spectrum(const SpectralDecomposition& sd,
                               const char* what) {
  for (int j = 0; j < sd.dim(); ++j) {
    if (!(sd.eigenvalues(j) > 0.0)) {
      std::ostringstream os;
      os << what << ": matrix is not positive definite (eigenvalue "
         << sd.eigenvalues(j) << ")";
      throw DomainError(os.str());
    }
  }
}

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch " << a << " vs " << b;
    throw ContractViolation(os.str());
  }
}

// Hadamard product of the kernel with B in A's eigenbasis, rotated back.
template <class Kernel>
HermitianMatrix schur_in_eigenbasis(const SpectralDecomposition& sd,
                                    const HermitianMatrix& b, Kernel kernel) {
  require_same_dim(sd.dim(), b.dim(), "schur_in_eigenbasis");
  ComplexMatrix bt = sd.to_eigenbasis(b.matrix());
  const int n = sd.dim();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      bt(i, j) *= kernel(sd.eigenvalues(i), sd.eigenvalues(j));
  return HermitianMatrix::symmetrized(sd.from_eigenbasis(bt));
}

}  // namespace

// ---------------------------------------------------------------------------

HermitianMatrix matrix_function(const ScalarFunctionFamily& fam, int order,
                                const SpectralDecomposition& sd) {
  if (order < 0 || order > 2)
    throw ContractViolation("matrix_function: order must be 0, 1 or 2");
  const auto f0 = fam.value_at_zero();
  const bool allow_zero = order == 0 && f0.has_value();
  for (int j = 0; j < sd.dim(); ++j) {
    const double lam = sd.eigenvalues(j);
    if (lam > 0.0) continue;
    if (allow_zero && lam >= -kZeroEigenvalue) continue;
    std::ostringstream os;
    os << "matrix_function: eigenvalue " << lam << " outside the domain of "
       << fam.to_string();
    throw DomainError(os.str());
  }
  return sd.map([&](double lam) {
    if (lam <= 0.0) return *f0;
    return scalar_eval(fam, order, lam);
  });
}

HermitianMatrix matrix_function(const ScalarFunctionFamily& fam, int order,
                                const HermitianMatrix& a) {
  return matrix_function(fam, order, eigh(a));
}

HermitianMatrix frechet_derivative(const ScalarFunctionFamily& fam, int order,
                                   const SpectralDecomposition& sd,
                                   const HermitianMatrix& b) {
  require_positive_spectrum(sd, "frechet_derivative");
  return schur_in_eigenbasis(sd, b, [&](double li, double lj) {
    return divided_difference(fam, order, li, lj);
  });
}

HermitianMatrix frechet_derivative(const ScalarFunctionFamily& fam, int order,
                                   const HermitianMatrix& a,
                                   const HermitianMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "frechet_derivative");
  return frechet_derivative(fam, order, eigh(a), b);
}

HermitianMatrix lr_apply(const ScalarFunctionFamily& fam,
                         const SpectralDecomposition& sd, double t,
                         const HermitianMatrix& b) {
  require_positive_spectrum(sd, "lr_apply");
  if (!(t >= 0.0 && t <= 1.0))
    throw DomainError("lr_apply: t must lie in [0, 1]");
  return schur_in_eigenbasis(sd, b, [&](double li, double lj) {
    return fam.fsecond(t * li + (1.0 - t) * lj);
  });
}

HermitianMatrix lr_apply(const ScalarFunctionFamily& fam,
                         const HermitianMatrix& a, double t,
                         const HermitianMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "lr_apply");
  return lr_apply(fam, eigh(a), t, b);
}

HermitianMatrix frechet_derivative_quadrature(const ScalarFunctionFamily& fam,
                                              int order, const HermitianMatrix& a,
                                              const HermitianMatrix& b) {
  if (order != 0 && order != 1)
    throw ContractViolation("frechet_derivative_quadrature: order must be 0 or 1");
  require_same_dim(a.dim(), b.dim(), "frechet_derivative_quadrature");
  const SpectralDecomposition sd = eigh(a);
  require_positive_spectrum(sd, "frechet_derivative_quadrature");
  return schur_in_eigenbasis(sd, b, [&](double li, double lj) {
    return integrate(
        [&](double t) { return scalar_eval(fam, order + 1, t * li + (1.0 - t) * lj); },
        0.0, 1.0);
  });
}

// ---------------------------------------------------------------------------
// Hermitian basis

namespace {

// Position of the pair (i, j), i < j, in row-major order.
int pair_index(int n, int i, int j) { return i * n - i * (i + 1) / 2 + (j - i - 1); }

struct BasisLabel {
  enum Kind { kDiagonal, kSymmetric, kAntisymmetric } kind;
  int i;
  int j;
};

BasisLabel label_of(int n, int index) {
  if (index < n) return {BasisLabel::kDiagonal, index, index};
  const int pairs = n * (n - 1) / 2;
  int k = index - n;
  const auto kind = k < pairs ? BasisLabel::kSymmetric : BasisLabel::kAntisymmetric;
  if (k >= pairs) k -= pairs;
  for (int i = 0; i < n; ++i) {
    const int row = n - 1 - i;
    if (k < row) return {kind, i, i + 1 + k};
    k -= row;
  }
  throw ContractViolation("hermitian basis index out of range");
}

}  // namespace

HermitianMatrix hermitian_basis_element(int n, int index) {
  if (index < 0 || index >= n * n)
    throw ContractViolation("hermitian_basis_element: index out of range");
  const BasisLabel l = label_of(n, index);
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  const double r = std::numbers::sqrt2 / 2.0;
  switch (l.kind) {
    case BasisLabel::kDiagonal:
      m(l.i, l.i) = 1.0;
      break;
    case BasisLabel::kSymmetric:
      m(l.i, l.j) = r;
      m(l.j, l.i) = r;
      break;
    case BasisLabel::kAntisymmetric:
      m(l.i, l.j) = cplx(0.0, r);
      m(l.j, l.i) = cplx(0.0, -r);
      break;
  }
  return HermitianMatrix(std::move(m));
}

RealVector to_coordinates(const HermitianMatrix& h) {
  const int n = h.dim();
  const int pairs = n * (n - 1) / 2;
  RealVector c(n * n);
  const double s = std::numbers::sqrt2;
  for (int i = 0; i < n; ++i) c(i) = h(i, i).real();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int k = pair_index(n, i, j);
      // <(E_ij + E_ji)/sqrt2, H> = sqrt2 Re h_ij, <i(E_ij - E_ji)/sqrt2, H> = sqrt2 Im h_ij
      c(n + k) = s * h(i, j).real();
      c(n + pairs + k) = s * h(i, j).imag();
    }
  return c;
}

HermitianMatrix from_coordinates(int n, const RealVector& c) {
  if (c.size() != n * n)
    throw ContractViolation("from_coordinates: coordinate vector has wrong length");
  const int pairs = n * (n - 1) / 2;
  const double r = std::numbers::sqrt2 / 2.0;
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = c(i);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int k = pair_index(n, i, j);
      const cplx v(r * c(n + k), r * c(n + pairs + k));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  return HermitianMatrix::symmetrized(m);
}

// ---------------------------------------------------------------------------
// Superoperator

Superoperator::Superoperator(int n, RealMatrix mat) : n_(n), mat_(std::move(mat)) {
  if (mat_.rows() != n * n || mat_.cols() != n * n)
    throw ContractViolation("Superoperator: matrix must be n^2 x n^2");
}

Superoperator Superoperator::identity(int n) {
  return Superoperator(n, RealMatrix::Identity(n * n, n * n));
}

HermitianMatrix Superoperator::apply(const HermitianMatrix& h) const {
  require_same_dim(n_, h.dim(), "Superoperator::apply");
  return from_coordinates(n_, mat_ * to_coordinates(h));
}

RealVector Superoperator::eigenvalues() const { return eigvalsh(mat_); }

double Superoperator::min_eigenvalue() const { return eigenvalues()(0); }

double Superoperator::symmetry_residual() const {
  return (mat_ - mat_.transpose()).norm();
}

Superoperator Superoperator::operator+(const Superoperator& o) const {
  require_same_dim(n_, o.n_, "Superoperator::operator+");
  return Superoperator(n_, mat_ + o.mat_);
}

Superoperator Superoperator::operator-(const Superoperator& o) const {
  require_same_dim(n_, o.n_, "Superoperator::operator-");
  return Superoperator(n_, mat_ - o.mat_);
}

Superoperator Superoperator::operator*(double s) const {
  return Superoperator(n_, mat_ * s);
}

Superoperator superoperator_of(const ScalarFunctionFamily& fam,
                               const HermitianMatrix& a) {
  const int n = a.dim();
  const SpectralDecomposition sd = eigh(a);
  require_positive_spectrum(sd, "superoperator_of");
  RealMatrix mat(n * n, n * n);
  for (int b = 0; b < n * n; ++b)
    mat.col(b) = to_coordinates(
        frechet_derivative(fam, 1, sd, hermitian_basis_element(n, b)));
  return Superoperator(n, std::move(mat));
}

Superoperator superop_inverse(const Superoperator& s) {
  const SpectralDecomposition sd =
      eigh(HermitianMatrix::symmetrized(s.matrix().cast<cplx>()));
  const double lo = sd.eigenvalues(0);
  const double hi = sd.eigenvalues(sd.dim() - 1);
  if (!(lo > kConditioningFloor * hi) || !(hi > 0.0)) {
    std::ostringstream os;
    os << "superop_inverse: superoperator is not safely positive definite "
       << "(min/max eigenvalue ratio " << (hi != 0.0 ? lo / hi : 0.0) << ")";
    throw ConditioningError(os.str(), hi != 0.0 ? lo / hi : 0.0);
  }
  // Eigenvectors of a real symmetric matrix may carry a global complex
  // phase per column; V diag(1/lambda) V* is still real.
  ComplexMatrix scaled = sd.eigenvectors;
  for (int j = 0; j < sd.dim(); ++j) scaled.col(j) /= sd.eigenvalues(j);
  const RealMatrix inv = (scaled * sd.eigenvectors.adjoint()).real();
  return Superoperator(s.n(), 0.5 * (inv + inv.transpose()));
}

}  // namespace bregmat
