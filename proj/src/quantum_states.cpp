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

#include "bregmat/quantum_states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bregmat/bregman.hpp"
#include "bregmat/errors.hpp"

namespace bregmat {

namespace {

bool near_one(double q) { return std::abs(q - 1.0) <= kQOneSwitch; }

HermitianMatrix maximally_mixed(int d) {
  return HermitianMatrix::identity(d) / static_cast<double>(d);
}

}  // namespace

// ---------------------------------------------------------------------------
// States

DensityMatrix::DensityMatrix(HermitianMatrix rho, Dims dims)
    : rho_(std::move(rho)), dims_(std::move(dims)) {
  if (dims_.total() != rho_.dim()) {
    std::ostringstream os;
    os << "DensityMatrix: dims total " << dims_.total()
       << " does not match matrix dimension " << rho_.dim();
    throw ContractViolation(os.str());
  }
  const double tr = rho_.trace();
  if (std::abs(tr - 1.0) > kDensityTolerance) {
    std::ostringstream os;
    os << "DensityMatrix: trace is " << tr << ", expected 1";
    throw DomainError(os.str());
  }
  const double lo = min_eigenvalue(rho_);
  if (lo < -kDensityTolerance) {
    std::ostringstream os;
    os << "DensityMatrix: not positive semidefinite (min eigenvalue " << lo << ")";
    throw DomainError(os.str());
  }
}

DensityMatrix::DensityMatrix(HermitianMatrix rho)
    : DensityMatrix(rho, Dims{rho.dim()}) {}

DensityMatrix DensityMatrix::reduced(std::initializer_list<int> keep) const {
  std::vector<int> factors;
  for (int k : keep) factors.push_back(dims_[k]);
  return DensityMatrix(partial_trace(rho_, dims_, keep), Dims(std::move(factors)));
}

TripartiteState::TripartiteState(DensityMatrix rho) : rho_(std::move(rho)) {
  if (rho_.dims().size() != 3)
    throw ContractViolation("TripartiteState: exactly three tensor factors required");
}

TripartiteState random_tripartite(int d1, int d2, int d3, Engine& rng) {
  return TripartiteState(
      DensityMatrix(random_density(d1 * d2 * d3, rng), Dims{d1, d2, d3}));
}

double trace_power(const HermitianMatrix& rho, double q) {
  const SpectralDecomposition sd = eigh(rho);
  double s = 0.0;
  for (int j = 0; j < sd.dim(); ++j)
    if (sd.eigenvalues(j) > 0.0) s += std::pow(sd.eigenvalues(j), q);
  return s;
}

double tsallis_entropy(double q, const DensityMatrix& rho) {
  if (!(q > 0.0)) throw DomainError("tsallis_entropy: q must be > 0");
  const SpectralDecomposition sd = eigh(rho.matrix());
  double s = 0.0;
  for (int j = 0; j < sd.dim(); ++j) {
    const double lam = sd.eigenvalues(j);
    if (lam > 0.0) s += lam * ln_q(q, lam);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const SpectralDecomposition sd = eigh(rho.matrix());
  double s = 0.0;
  for (int j = 0; j < sd.dim(); ++j) {
    const double lam = sd.eigenvalues(j);
    if (lam > 0.0) s -= lam * std::log(lam);
  }
  return s;
}

TripartiteState saturating_state() {
  // Basis index 4 i1 + 2 i2 + i3.
  ComplexMatrix rho = ComplexMatrix::Zero(8, 8);
  for (int base : {2, 3}) {  // |010>, |011> paired with |100>, |101>
    const int partner = base + 2;
    rho(base, base) = 0.25;
    rho(base, partner) = 0.25;
    rho(partner, base) = 0.25;
    rho(partner, partner) = 0.25;
  }
  return TripartiteState(DensityMatrix(HermitianMatrix(rho), Dims{2, 2, 2}));
}

WeightedSsaCheck weighted_tsallis_ssa_check(double q, const TripartiteState& rho) {
  if (!(q >= 1.0 && q <= 2.0)) {
    std::ostringstream os;
    os << "weighted_tsallis_ssa_check: q = " << q << " outside [1, 2]";
    throw DomainError(os.str());
  }
  WeightedSsaCheck c;
  c.q = q;
  if (near_one(q)) {
    c.von_neumann_limit = true;
    c.lhs = von_neumann_entropy(rho.state()) + von_neumann_entropy(rho.rho2());
    c.rhs = von_neumann_entropy(rho.rho12()) + von_neumann_entropy(rho.rho23());
  } else {
    const double d1 = rho.d1();
    const double d3 = rho.d3();
    c.lhs = std::pow(d3, 1.0 - q) * trace_power(rho.rho12().matrix(), q) +
            std::pow(d1, 1.0 - q) * trace_power(rho.rho23().matrix(), q);
    c.rhs = trace_power(rho.state().matrix(), q) +
            std::pow(d1 * d3, 1.0 - q) * trace_power(rho.rho2().matrix(), q);
  }
  c.slack = c.rhs - c.lhs;
  return c;
}

double plain_tsallis_ssa_gap(double q, const TripartiteState& rho) {
  return trace_power(rho.rho12().matrix(), q) + trace_power(rho.rho23().matrix(), q) -
         trace_power(rho.state().matrix(), q) - trace_power(rho.rho2().matrix(), q);
}

SsaDivergenceSides ssa_divergence_sides(double q, const TripartiteState& rho) {
  if (!(q > 1.0 && q <= 2.0) || near_one(q))
    throw DomainError("ssa_divergence_sides: q must lie in (1, 2]");
  const auto fam = ScalarFunctionFamily::tsallis(q);
  const int d1 = rho.d1(), d3 = rho.d3();
  const HermitianMatrix r12 = rho.rho12().matrix();
  const HermitianMatrix r23 = rho.rho23().matrix();
  const HermitianMatrix r2 = rho.rho2().matrix();

  SsaDivergenceSides s;
  s.direct_lhs = bregman_extended(fam, tensor(r12, maximally_mixed(d3)),
                                  tensor({maximally_mixed(d1), r2, maximally_mixed(d3)}))
                     .value;
  s.direct_rhs =
      bregman_extended(fam, rho.state().matrix(), tensor(maximally_mixed(d1), r23)).value;
  const double w1 = std::pow(static_cast<double>(d1), 1.0 - q);
  const double w3 = std::pow(static_cast<double>(d3), 1.0 - q);
  s.purity_lhs = (w3 * trace_power(r12, q) - w1 * w3 * trace_power(r2, q)) / (q - 1.0);
  s.purity_rhs = (trace_power(rho.state().matrix(), q) - w1 * trace_power(r23, q)) / (q - 1.0);
  return s;
}

// ---------------------------------------------------------------------------
// Channels

std::vector<ComplexMatrix> weyl_unitaries(int n) {
  if (n < 1) throw ContractViolation("weyl_unitaries: n must be >= 1");
  ComplexMatrix shift = ComplexMatrix::Zero(n, n);
  ComplexMatrix clock = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    shift((j + 1) % n, j) = 1.0;
    clock(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * j / n);
  }
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<size_t>(n * n));
  ComplexMatrix xa = ComplexMatrix::Identity(n, n);
  for (int a = 0; a < n; ++a) {
    ComplexMatrix zb = ComplexMatrix::Identity(n, n);
    for (int b = 0; b < n; ++b) {
      out.push_back(xa * zb);
      zb = zb * clock;
    }
    xa = xa * shift;
  }
  return out;
}

PinchResult pinch_to_uniform(const HermitianMatrix& x, const Dims& dims,
                             int traced_factor) {
  if (dims.size() != 2)
    throw ContractViolation("pinch_to_uniform: bipartite dims (m, n) required");
  if (dims.total() != x.dim())
    throw ContractViolation("pinch_to_uniform: dims do not match matrix dimension");
  if (traced_factor != 0 && traced_factor != 1)
    throw ContractViolation("pinch_to_uniform: traced factor must be 0 or 1");

  const int kept = 1 - traced_factor;
  const int d = dims[traced_factor];
  const HermitianMatrix reduced = partial_trace(x, dims, {kept});
  const HermitianMatrix uniform = maximally_mixed(d);

  PinchResult r;
  r.direct = traced_factor == 1 ? tensor(reduced, uniform) : tensor(uniform, reduced);

  const ComplexMatrix id = ComplexMatrix::Identity(dims[kept], dims[kept]);
  ComplexMatrix acc = ComplexMatrix::Zero(x.dim(), x.dim());
  for (const ComplexMatrix& w : weyl_unitaries(d)) {
    const ComplexMatrix u = traced_factor == 1 ? tensor(id, w) : tensor(w, id);
    acc += u * x.matrix() * u.adjoint();
  }
  r.mixture = HermitianMatrix::symmetrized(acc / static_cast<double>(d * d));
  r.mixture_residual = (r.direct.matrix() - r.mixture.matrix()).norm();
  return r;
}

HermitianMatrix unitary_mixture_apply(const HermitianMatrix& x,
                                      std::span<const ComplexMatrix> unitaries,
                                      std::span<const double> weights) {
  if (unitaries.size() != weights.size() || unitaries.empty())
    throw ContractViolation("unitary_mixture_apply: need one weight per unitary");
  double total = 0.0;
  for (double c : weights) {
    if (!(c >= 0.0)) throw ContractViolation("unitary_mixture_apply: negative weight");
    total += c;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "unitary_mixture_apply: weights sum to " << total << ", expected 1";
    throw ContractViolation(os.str());
  }
  ComplexMatrix acc = ComplexMatrix::Zero(x.dim(), x.dim());
  for (size_t k = 0; k < unitaries.size(); ++k) {
    const ComplexMatrix& u = unitaries[k];
    if (u.rows() != x.dim() || u.cols() != x.dim())
      throw ContractViolation("unitary_mixture_apply: unitary has wrong dimension");
    const double res = unitarity_residual(u);
    if (res > 1e-10) {
      std::ostringstream os;
      os << "unitary_mixture_apply: member " << k << " is not unitary (residual "
         << res << ")";
      throw ContractViolation(os.str());
    }
    acc += weights[k] * (u * x.matrix() * u.adjoint());
  }
  return HermitianMatrix::symmetrized(acc);
}

ComplexMatrix block_swap_unitary(int n) {
  ComplexMatrix u = ComplexMatrix::Zero(2 * n, 2 * n);
  u.topRightCorner(n, n).setIdentity();
  u.bottomLeftCorner(n, n).setIdentity();
  return u;
}

MonotonicityDemo partial_trace_monotonicity_demo(double q) {
  if (!(q > 1.0 && q <= 2.0))
    throw DomainError("partial_trace_monotonicity_demo: q must lie in (1, 2]");
  const auto fam = ScalarFunctionFamily::tsallis(q);
  const TripartiteState rho = saturating_state();
  const HermitianMatrix half_id = maximally_mixed(2);

  MonotonicityDemo d;
  d.q = q;
  d.lhs = bregman_extended(fam, rho.rho12().matrix(),
                           tensor(half_id, rho.rho2().matrix()))
              .value;
  d.rhs = bregman_extended(fam, rho.state().matrix(),
                           tensor(half_id, rho.rho23().matrix()))
              .value;
  d.ratio = d.lhs / d.rhs;
  d.expected_ratio = std::pow(2.0, q - 1.0);
  d.monotonicity_violated = d.lhs > d.rhs;
  return d;
}

double spectral_norm(const ComplexMatrix& x) {
  const HermitianMatrix gram = HermitianMatrix::symmetrized(x.adjoint() * x);
  const SpectralDecomposition sd = eigh(gram);
  return std::sqrt(std::max(0.0, sd.eigenvalues(sd.dim() - 1)));
}

double contraction_monotonicity_check(const ScalarFunctionFamily& fam,
                                      const HermitianMatrix& a,
                                      const HermitianMatrix& b,
                                      const ComplexMatrix& x) {
  if (x.cols() != a.dim() || a.dim() != b.dim())
    throw ContractViolation("contraction_monotonicity_check: dimension mismatch");
  const double norm = spectral_norm(x);
  if (norm > 1.0 + 1e-10) {
    std::ostringstream os;
    os << "contraction_monotonicity_check: X is not a contraction (largest "
       << "singular value " << norm << ")";
    throw ContractViolation(os.str());
  }
  const HermitianMatrix xa = HermitianMatrix::symmetrized(x * a.matrix() * x.adjoint());
  const HermitianMatrix xb = HermitianMatrix::symmetrized(x * b.matrix() * x.adjoint());
  return bregman_extended(fam, a, b).value - bregman_extended(fam, xa, xb).value;
}

ComplexMatrix random_contraction(int k, int n, Engine& rng) {
  const ComplexMatrix g = ginibre(k, n, rng);
  const double r = std::uniform_real_distribution<double>(0.5, 1.0)(rng);
  return g * (r / spectral_norm(g));
}

}  // namespace bregmat
