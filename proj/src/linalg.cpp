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

#include "bregmat/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "bregmat/errors.hpp"

namespace bregmat {

namespace {

void require_square_finite(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << "matrix must be square and non-empty, got " << m.rows() << "x"
       << m.cols();
    throw ContractViolation(os.str());
  }
  if (!m.allFinite()) throw DomainError("matrix has non-finite entries");
}

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b,
                      const char* what) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << what << ": dimension mismatch " << a.dim() << " vs " << b.dim();
    throw ContractViolation(os.str());
  }
}

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTolerance = 1e-13;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
  require_square_finite(m_);
  const Asymmetry asym = max_asymmetry(m_);
  if (asym.value > kHermitianTolerance) {
    std::ostringstream os;
    os << "matrix is not Hermitian: |a(" << asym.row << "," << asym.col
       << ") - conj(a(" << asym.col << "," << asym.row
       << "))| = " << asym.value;
    throw DomainError(os.str());
  }
  // Exact symmetry downstream; the checked deviation is below tolerance.
  m_ = (0.5 * (m_ + m_.adjoint())).eval();
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& m) {
  require_square_finite(m);
  return HermitianMatrix((0.5 * (m + m.adjoint())).eval(), Trusted{});
}

HermitianMatrix HermitianMatrix::identity(int n) {
  return HermitianMatrix(ComplexMatrix::Identity(n, n), Trusted{});
}

HermitianMatrix HermitianMatrix::zero(int n) {
  return HermitianMatrix(ComplexMatrix::Zero(n, n), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> diag) {
  const auto n = static_cast<Eigen::Index>(diag.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diag[static_cast<size_t>(i)];
  require_square_finite(m);
  return HermitianMatrix(std::move(m), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(std::initializer_list<double> diag) {
  return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

HermitianMatrix HermitianMatrix::from_real(const RealMatrix& m) {
  return HermitianMatrix(ComplexMatrix(m.cast<cplx>()));
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  require_same_dim(*this, o, "operator+");
  return HermitianMatrix(m_ + o.m_, Trusted{});
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  require_same_dim(*this, o, "operator-");
  return HermitianMatrix(m_ - o.m_, Trusted{});
}

HermitianMatrix HermitianMatrix::operator-() const {
  return HermitianMatrix(-m_, Trusted{});
}

HermitianMatrix HermitianMatrix::operator*(double s) const {
  return HermitianMatrix(m_ * s, Trusted{});
}

HermitianMatrix HermitianMatrix::operator/(double s) const {
  return HermitianMatrix(m_ / s, Trusted{});
}

HermitianMatrix HermitianMatrix::conjugated_by(const ComplexMatrix& u) const {
  if (u.cols() != m_.rows())
    throw ContractViolation("conjugated_by: dimension mismatch");
  return symmetrized(u * m_ * u.adjoint());
}

// ---------------------------------------------------------------------------
// SpectralDecomposition

HermitianMatrix SpectralDecomposition::reconstruct() const {
  return map([](double x) { return x; });
}

ComplexMatrix SpectralDecomposition::to_eigenbasis(const ComplexMatrix& m) const {
  return eigenvectors.adjoint() * m * eigenvectors;
}

ComplexMatrix SpectralDecomposition::from_eigenbasis(const ComplexMatrix& m) const {
  return eigenvectors * m * eigenvectors.adjoint();
}

HermitianMatrix SpectralDecomposition::map(
    const std::function<double(double)>& g) const {
  const int n = dim();
  ComplexMatrix scaled = eigenvectors;
  for (int j = 0; j < n; ++j) scaled.col(j) *= g(eigenvalues(j));
  return HermitianMatrix::symmetrized(scaled * eigenvectors.adjoint());
}

// ---------------------------------------------------------------------------
// Dims

Dims::Dims(std::initializer_list<int> factors) : Dims(std::vector<int>(factors)) {}

Dims::Dims(std::vector<int> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw ContractViolation("Dims: no factors");
  for (int d : factors_)
    if (d < 1) throw ContractViolation("Dims: factors must be >= 1");
}

int Dims::total() const noexcept {
  return std::accumulate(factors_.begin(), factors_.end(), 1,
                         std::multiplies<>());
}

// ---------------------------------------------------------------------------
// Eigensolver

SpectralDecomposition eigh(const HermitianMatrix& h) {
  const int n = h.dim();
  ComplexMatrix a = h.matrix();
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double scale = a.norm();

  bool converged = scale == 0.0 || n == 1;
  double off = off_diagonal_norm(a);
  for (int sweep = 0; !converged && sweep < kMaxSweeps; ++sweep) {
    if (off <= kOffDiagonalTolerance * scale) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double b = std::abs(apq);
        if (b == 0.0) continue;
        // Remove the phase of a_pq, then apply the real symmetric rotation.
        const cplx phase = apq / b;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * b);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = diag(1, conj(phase)) * [[c, s], [-s, c]]
        const cplx jpp = c;
        const cplx jpq = s;
        const cplx jqp = -s * std::conj(phase);
        const cplx jqq = c * std::conj(phase);

        for (int k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (int k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (int k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
    off = off_diagonal_norm(a);
  }
  if (!converged && off > kOffDiagonalTolerance * scale) {
    std::ostringstream os;
    os << "eigh: Jacobi iteration did not converge in " << kMaxSweeps
       << " sweeps (off-diagonal norm " << off << ")";
    throw NumericalFailure(os.str(), off);
  }

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return a(i, i).real() < a(j, j).real();
  });
  SpectralDecomposition sd;
  sd.eigenvalues.resize(n);
  sd.eigenvectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    sd.eigenvalues(k) = a(order[static_cast<size_t>(k)], order[static_cast<size_t>(k)]).real();
    sd.eigenvectors.col(k) = v.col(order[static_cast<size_t>(k)]);
  }
  return sd;
}

RealVector eigvalsh(const RealMatrix& sym) {
  return eigh(HermitianMatrix::symmetrized(sym.cast<cplx>())).eigenvalues;
}

double min_eigenvalue(const HermitianMatrix& h) {
  return eigh(h).eigenvalues(0);
}

// ---------------------------------------------------------------------------
// Tensor structure

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

HermitianMatrix tensor(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix::symmetrized(tensor(a.matrix(), b.matrix()));
}

HermitianMatrix tensor(std::initializer_list<HermitianMatrix> factors) {
  if (factors.size() == 0) throw ContractViolation("tensor: no factors");
  auto it = factors.begin();
  ComplexMatrix acc = it->matrix();
  for (++it; it != factors.end(); ++it) acc = tensor(acc, it->matrix());
  return HermitianMatrix::symmetrized(acc);
}

ComplexMatrix partial_trace(const ComplexMatrix& x, const Dims& dims,
                            std::span<const int> keep) {
  const int k = dims.size();
  if (x.rows() != x.cols() || x.rows() != dims.total()) {
    std::ostringstream os;
    os << "partial_trace: dims total " << dims.total()
       << " does not match matrix dimension " << x.rows();
    throw ContractViolation(os.str());
  }
  if (keep.empty()) throw ContractViolation("partial_trace: empty keep set");
  std::vector<bool> kept(static_cast<size_t>(k), false);
  for (int f : keep) {
    if (f < 0 || f >= k)
      throw ContractViolation("partial_trace: factor index out of range");
    kept[static_cast<size_t>(f)] = true;
  }

  // Strides of the full and reduced index spaces (first factor slowest).
  std::vector<int> stride(static_cast<size_t>(k)), kept_stride(static_cast<size_t>(k), 0);
  int out_dim = 1;
  for (int f = k - 1, s = 1; f >= 0; --f) {
    stride[static_cast<size_t>(f)] = s;
    s *= dims[f];
    if (kept[static_cast<size_t>(f)]) {
      kept_stride[static_cast<size_t>(f)] = out_dim;
      out_dim *= dims[f];
    }
  }

  const int n = dims.total();
  std::vector<int> kept_index(static_cast<size_t>(n)), traced_index(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) {
    int ki = 0, ti = 0, tstride = 1;
    for (int f = k - 1; f >= 0; --f) {
      const int digit = (r / stride[static_cast<size_t>(f)]) % dims[f];
      if (kept[static_cast<size_t>(f)]) {
        ki += digit * kept_stride[static_cast<size_t>(f)];
      } else {
        ti += digit * tstride;
        tstride *= dims[f];
      }
    }
    kept_index[static_cast<size_t>(r)] = ki;
    traced_index[static_cast<size_t>(r)] = ti;
  }

  ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r)
      if (traced_index[static_cast<size_t>(r)] == traced_index[static_cast<size_t>(c)])
        out(kept_index[static_cast<size_t>(r)], kept_index[static_cast<size_t>(c)]) += x(r, c);
  return out;
}

HermitianMatrix partial_trace(const HermitianMatrix& x, const Dims& dims,
                              std::span<const int> keep) {
  return HermitianMatrix::symmetrized(partial_trace(x.matrix(), dims, keep));
}

HermitianMatrix partial_trace(const HermitianMatrix& x, const Dims& dims,
                              std::initializer_list<int> keep) {
  return partial_trace(x, dims, std::span<const int>(keep.begin(), keep.size()));
}

double hs_inner(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a, b, "hs_inner");
  // Tr(AB) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
  return (a.matrix().array() * b.matrix().conjugate().array()).sum().real();
}

Asymmetry max_asymmetry(const ComplexMatrix& m) {
  Asymmetry worst;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      const double d = std::abs(m(i, j) - std::conj(m(j, i)));
      if (d > worst.value) worst = {d, static_cast<int>(i), static_cast<int>(j)};
    }
  return worst;
}

double unitarity_residual(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()))
      .cwiseAbs()
      .maxCoeff();
}

// ---------------------------------------------------------------------------
// Random ensembles

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ComplexMatrix ginibre(int rows, int cols, Engine& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  // Fill row-major so the draw order does not depend on storage order.
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  return g;
}

HermitianMatrix random_density(int n, Engine& rng) {
  if (n < 1) throw DomainError("random_density: n must be >= 1");
  const ComplexMatrix g = ginibre(n, n, rng);
  const ComplexMatrix w = g * g.adjoint();
  return HermitianMatrix::symmetrized(w / w.trace().real());
}

HermitianMatrix random_density(int n, std::uint64_t seed) {
  Engine rng(seed);
  return random_density(n, rng);
}

HermitianMatrix random_pd(int n, Engine& rng, double floor) {
  const ComplexMatrix g = ginibre(n, n, rng);
  return HermitianMatrix::symmetrized(g * g.adjoint() +
                                      floor * ComplexMatrix::Identity(n, n));
}

HermitianMatrix random_hermitian(int n, Engine& rng) {
  return HermitianMatrix::symmetrized(ginibre(n, n, rng));
}

ComplexMatrix random_unitary(int n, Engine& rng) {
  return eigh(random_hermitian(n, rng)).eigenvectors;
}

}  // namespace bregmat
