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

#ifndef BREGMAT_TESTS_ORACLES_HPP
#define BREGMAT_TESTS_ORACLES_HPP

// Reference computations used only by the tests. They avoid the library's
// own eigensolver and kernels so agreement is meaningful.

#include <Eigen/Eigenvalues>
#include <cmath>
#include <functional>
#include <vector>

#include "bregmat/linalg.hpp"

namespace oracle {

using bregmat::ComplexMatrix;
using bregmat::HermitianMatrix;

struct Eig {
  Eigen::VectorXd values;
  ComplexMatrix vectors;
};

inline Eig eig(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  return {es.eigenvalues(), es.eigenvectors()};
}
inline Eig eig(const HermitianMatrix& m) { return eig(m.matrix()); }

inline ComplexMatrix apply(const ComplexMatrix& m, const std::function<double(double)>& g) {
  const Eig e = eig(m);
  Eigen::VectorXcd d(e.values.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = g(e.values(i));
  return e.vectors * d.asDiagonal() * e.vectors.adjoint();
}

inline double trace_fn(const ComplexMatrix& m, const std::function<double(double)>& g) {
  const Eig e = eig(m);
  double s = 0.0;
  for (Eigen::Index i = 0; i < e.values.size(); ++i) s += g(e.values(i));
  return s;
}

// Tr f(X) - Tr f(Y) - Tr f'(Y)(X - Y).
inline double bregman(const std::function<double(double)>& f,
                      const std::function<double(double)>& fp, const ComplexMatrix& x,
                      const ComplexMatrix& y) {
  return trace_fn(x, f) - trace_fn(y, f) - (apply(y, fp) * (x - y)).trace().real();
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Partial traces of a bipartite (m, n) matrix.
inline ComplexMatrix trace_second(const ComplexMatrix& x, int m, int n) {
  ComplexMatrix out = ComplexMatrix::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < n; ++k) out(i, j) += x(i * n + k, j * n + k);
  return out;
}
inline ComplexMatrix trace_first(const ComplexMatrix& x, int m, int n) {
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < m; ++i) out(k, l) += x(i * n + k, i * n + l);
  return out;
}

// Composite Simpson rule on [0, 1] with `panels` (even) subintervals.
inline double simpson(const std::function<double(double)>& g, int panels = 4000) {
  const double h = 1.0 / panels;
  double s = g(0.0) + g(1.0);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * g(i * h);
  return s * h / 3.0;
}

inline double tr_pow(const ComplexMatrix& m, double q) {
  return trace_fn(m, [q](double l) { return l > 1e-14 ? std::pow(l, q) : 0.0; });
}

inline double von_neumann(const ComplexMatrix& m) {
  return trace_fn(m, [](double l) { return l > 1e-14 ? -l * std::log(l) : 0.0; });
}

}  // namespace oracle

#endif  // BREGMAT_TESTS_ORACLES_HPP
