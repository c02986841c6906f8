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

#ifndef BREGMAT_LINALG_HPP
#define BREGMAT_LINALG_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace bregmat {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Absolute tolerance on |a_ij - conj(a_ji)| accepted when building a
/// HermitianMatrix from caller data.
inline constexpr double kHermitianTolerance = 1e-12;

/// Square complex matrix with a verified Hermitian structure.
///
/// The checked constructor rejects non-square, non-finite or non-Hermitian
/// input. `symmetrized` is for matrices that are Hermitian by construction
/// and only carry rounding asymmetry; it projects onto (M + M*)/2.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(ComplexMatrix m);

  static HermitianMatrix symmetrized(const ComplexMatrix& m);
  static HermitianMatrix identity(int n);
  static HermitianMatrix zero(int n);
  static HermitianMatrix diagonal(std::span<const double> diag);
  static HermitianMatrix diagonal(std::initializer_list<double> diag);
  static HermitianMatrix from_real(const RealMatrix& m);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  cplx operator()(int i, int j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }
  double frobenius_norm() const { return m_.norm(); }

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator-() const;
  HermitianMatrix operator*(double s) const;
  HermitianMatrix operator/(double s) const;
  friend HermitianMatrix operator*(double s, const HermitianMatrix& h) {
    return h * s;
  }

  /// U H U* for a (caller-verified) unitary U.
  HermitianMatrix conjugated_by(const ComplexMatrix& u) const;

 private:
  struct Trusted {};
  HermitianMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// Eigenvalues in ascending order; columns of `eigenvectors` are the
/// matching orthonormal eigenvectors.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  int dim() const noexcept { return static_cast<int>(eigenvalues.size()); }
  HermitianMatrix reconstruct() const;
  /// U* M U.
  ComplexMatrix to_eigenbasis(const ComplexMatrix& m) const;
  /// U M U*.
  ComplexMatrix from_eigenbasis(const ComplexMatrix& m) const;
  /// U diag(g(lambda)) U*.
  HermitianMatrix map(const std::function<double(double)>& g) const;
};

/// Tensor-factor dimensions (d1, ..., dk); the first factor is the slowest
/// index in the Kronecker ordering.
class Dims {
 public:
  Dims() = default;
  Dims(std::initializer_list<int> factors);
  explicit Dims(std::vector<int> factors);

  const std::vector<int>& factors() const noexcept { return factors_; }
  int size() const noexcept { return static_cast<int>(factors_.size()); }
  int operator[](int i) const { return factors_.at(static_cast<size_t>(i)); }
  int total() const noexcept;
  bool operator==(const Dims&) const = default;

 private:
  std::vector<int> factors_;
};

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
/// Throws NumericalFailure if the off-diagonal mass does not fall below
/// 1e-13 * ||A||_F within 100 sweeps.
SpectralDecomposition eigh(const HermitianMatrix& h);

/// Eigenvalues of a real symmetric matrix (ascending).
RealVector eigvalsh(const RealMatrix& sym);

double min_eigenvalue(const HermitianMatrix& h);

/// Kronecker product, first argument slow.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
HermitianMatrix tensor(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix tensor(std::initializer_list<HermitianMatrix> factors);

/// Reduced matrix on the factors listed in `keep` (0-based, any order;
/// the result keeps the original factor order). Throws ContractViolation
/// when dims do not match or `keep` is empty / out of range.
ComplexMatrix partial_trace(const ComplexMatrix& x, const Dims& dims,
                            std::span<const int> keep);
HermitianMatrix partial_trace(const HermitianMatrix& x, const Dims& dims,
                              std::initializer_list<int> keep);
HermitianMatrix partial_trace(const HermitianMatrix& x, const Dims& dims,
                              std::span<const int> keep);

/// Tr A B.
double hs_inner(const HermitianMatrix& a, const HermitianMatrix& b);

/// Largest |a_ij - conj(a_ji)| together with its position.
struct Asymmetry {
  double value = 0.0;
  int row = 0;
  int col = 0;
};
Asymmetry max_asymmetry(const ComplexMatrix& m);

/// Max-abs deviation of U*U from the identity.
double unitarity_residual(const ComplexMatrix& u);

// ---------------------------------------------------------------------------
// Random ensembles. All draws come from an explicit engine; the seed-based
// overloads build a fresh std::mt19937_64 so output depends on the seed only.

using Engine = std::mt19937_64;

/// Per-trial seed derived from a campaign seed (splitmix64 mixing).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// rows x cols matrix of i.i.d. standard complex Gaussians (E|g|^2 = 1).
ComplexMatrix ginibre(int rows, int cols, Engine& rng);

/// G G* / Tr(G G*).
HermitianMatrix random_density(int n, std::uint64_t seed);
HermitianMatrix random_density(int n, Engine& rng);

/// G G* + floor * I.
HermitianMatrix random_pd(int n, Engine& rng, double floor = 0.05);

/// (G + G*) / 2.
HermitianMatrix random_hermitian(int n, Engine& rng);

/// Eigenvectors of a random Hermitian matrix.
ComplexMatrix random_unitary(int n, Engine& rng);

}  // namespace bregmat

#endif  // BREGMAT_LINALG_HPP
