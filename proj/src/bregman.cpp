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

#include "bregmat/bregman.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "bregmat/errors.hpp"
#include "bregmat/matrix_calculus.hpp"
#include "bregmat/quadrature.hpp"

namespace bregmat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_pd(const SpectralDecomposition& sd, const char* which) {
  if (!(sd.eigenvalues(0) > 0.0)) {
    std::ostringstream os;
    os << "bregman: " << which << " is not positive definite (min eigenvalue "
       << sd.eigenvalues(0) << "); use bregman_extended for PSD arguments";
    throw DomainError(os.str());
  }
}

void require_same_dim(const HermitianMatrix& x, const HermitianMatrix& y) {
  if (x.dim() != y.dim()) {
    std::ostringstream os;
    os << "bregman: dimension mismatch " << x.dim() << " vs " << y.dim();
    throw ContractViolation(os.str());
  }
}

double trace_of(const ScalarFunctionFamily& fam, const SpectralDecomposition& sd) {
  double s = 0.0;
  for (int j = 0; j < sd.dim(); ++j) s += fam.f(sd.eigenvalues(j));
  return s;
}

double closed(const ScalarFunctionFamily& fam, const HermitianMatrix& x,
              const SpectralDecomposition& sx, const HermitianMatrix& y,
              const SpectralDecomposition& sy) {
  return trace_of(fam, sx) - trace_of(fam, sy) -
         hs_inner(matrix_function(fam, 1, sy), x - y);
}

double eigen_expansion(const ScalarFunctionFamily& fam,
                       const SpectralDecomposition& sx,
                       const SpectralDecomposition& sy) {
  const ComplexMatrix overlap = sx.eigenvectors.adjoint() * sy.eigenvectors;
  const int n = sx.dim();
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    const double mu = sy.eigenvalues(k);
    const double f_mu = fam.f(mu);
    const double fp_mu = fam.fprime(mu);
    for (int j = 0; j < n; ++j) {
      const double lam = sx.eigenvalues(j);
      s += std::norm(overlap(j, k)) * (fam.f(lam) - f_mu - fp_mu * (lam - mu));
    }
  }
  return s;
}

double integral_1d(const ScalarFunctionFamily& fam, const HermitianMatrix& x,
                   const HermitianMatrix& y) {
  const HermitianMatrix delta = x - y;
  return integrate(
      [&](double s) {
        const SpectralDecomposition sd = eigh(y + s * delta);
        return (1.0 - s) * hs_inner(delta, frechet_derivative(fam, 1, sd, delta));
      },
      0.0, 1.0);
}

double integral_2d(const ScalarFunctionFamily& fam, const HermitianMatrix& x,
                   const HermitianMatrix& y) {
  const HermitianMatrix delta = x - y;
  const int n = x.dim();
  return integrate(
      [&](double s) {
        const SpectralDecomposition sd = eigh(y + s * delta);
        // Tr(D f''(tL + (1-t)R)(D)) = sum_ij |D~_ij|^2 f''(t l_i + (1-t) l_j)
        // with D~ = D in the eigenbasis of Y + s(X - Y).
        const RealMatrix weight = sd.to_eigenbasis(delta.matrix()).cwiseAbs2();
        const RealVector& lam = sd.eigenvalues;
        const double inner = integrate(
            [&](double t) {
              double acc = 0.0;
              for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i)
                  acc += weight(i, j) * fam.fsecond(t * lam(i) + (1.0 - t) * lam(j));
              return acc;
            },
            0.0, 1.0);
        return (1.0 - s) * inner;
      },
      0.0, 1.0);
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::kClosed:
      return "closed";
    case Method::kEigen:
      return "eigen";
    case Method::kIntegral1d:
      return "integral-1d";
    case Method::kIntegral2d:
      return "integral-2d";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  for (Method m : kAllMethods)
    if (to_string(m) == name) return m;
  throw std::invalid_argument("unknown divergence method '" + name + "'");
}

bool DivergenceValue::is_infinite() const noexcept { return std::isinf(value); }

DivergenceValue bregman(const ScalarFunctionFamily& fam,
                        const HermitianMatrix& x, const HermitianMatrix& y,
                        Method method) {
  require_same_dim(x, y);
  const SpectralDecomposition sx = eigh(x);
  const SpectralDecomposition sy = eigh(y);
  require_pd(sx, "X");
  require_pd(sy, "Y");

  DivergenceValue out;
  out.method = method;
  switch (method) {
    case Method::kClosed:
      out.value = closed(fam, x, sx, y, sy);
      break;
    case Method::kEigen:
      out.value = eigen_expansion(fam, sx, sy);
      break;
    case Method::kIntegral1d:
      out.value = integral_1d(fam, x, y);
      break;
    case Method::kIntegral2d:
      out.value = integral_2d(fam, x, y);
      break;
  }
  return out;
}

std::array<DivergenceValue, 4> bregman_all_methods(
    const ScalarFunctionFamily& fam, const HermitianMatrix& x,
    const HermitianMatrix& y) {
  std::array<DivergenceValue, 4> out;
  for (size_t i = 0; i < kAllMethods.size(); ++i)
    out[i] = bregman(fam, x, y, kAllMethods[i]);
  for (auto& v : out) v.residual_to_closed = v.value - out[0].value;
  return out;
}

DivergenceValue bregman_extended(const ScalarFunctionFamily& fam,
                                 const HermitianMatrix& x,
                                 const HermitianMatrix& y) {
  require_same_dim(x, y);
  const auto f0 = fam.value_at_zero();
  if (!f0)
    throw UnsupportedError("bregman_extended: " + fam.to_string() +
                           " is not continuous at zero");
  const SpectralDecomposition sx = eigh(x);
  const SpectralDecomposition sy = eigh(y);
  for (const auto* sd : {&sx, &sy}) {
    if (sd->eigenvalues(0) < -kSingularEigenvalue) {
      std::ostringstream os;
      os << "bregman_extended: argument is not positive semidefinite "
         << "(min eigenvalue " << sd->eigenvalues(0) << ")";
      throw DomainError(os.str());
    }
  }
  const double fp0 = fam.fprime_limit_at_zero();
  auto value = [&](double v) { return v <= kSingularEigenvalue ? *f0 : fam.f(v); };

  const ComplexMatrix overlap = sx.eigenvectors.adjoint() * sy.eigenvectors;
  const int n = x.dim();
  DivergenceValue out;
  out.method = Method::kEigen;
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    const double mu = sy.eigenvalues(k);
    const bool mu_zero = mu <= kSingularEigenvalue;
    for (int j = 0; j < n; ++j) {
      const double w = std::norm(overlap(j, k));
      if (w <= kOverlapThreshold) continue;
      const double lam = sx.eigenvalues(j);
      const bool lam_zero = lam <= kSingularEigenvalue;
      if (!mu_zero) {
        const double l = lam_zero ? 0.0 : lam;
        s += w * (value(lam) - fam.f(mu) - fam.fprime(mu) * (l - mu));
      } else if (!lam_zero) {
        if (std::isinf(fp0)) {
          out.value = kInf;
          return out;
        }
        s += w * (fam.f(lam) - *f0 - fp0 * lam);
      }
      // Both zero: the term vanishes identically along the eps path.
    }
  }
  out.value = s;
  return out;
}

double tsallis_closed_form(double q, const HermitianMatrix& a,
                           const HermitianMatrix& b) {
  if (std::abs(q - 1.0) <= kQOneSwitch)
    throw DomainError("tsallis_closed_form: q = 1, use the entropy family");
  require_same_dim(a, b);
  const SpectralDecomposition sa = eigh(a);
  const SpectralDecomposition sb = eigh(b);
  require_pd(sa, "A");
  require_pd(sb, "B");
  double tr_aq = 0.0, tr_bq = 0.0;
  for (int j = 0; j < a.dim(); ++j) {
    tr_aq += std::pow(sa.eigenvalues(j), q);
    tr_bq += std::pow(sb.eigenvalues(j), q);
  }
  const HermitianMatrix b_qm1 = sb.map([q](double v) { return std::pow(v, q - 1.0); });
  return tr_bq + (tr_aq - q * hs_inner(a, b_qm1)) / (q - 1.0);
}

}  // namespace bregmat
