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

#ifndef BREGMAT_QUANTUM_STATES_HPP
#define BREGMAT_QUANTUM_STATES_HPP

#include <initializer_list>
#include <span>
#include <vector>

#include "bregmat/linalg.hpp"
#include "bregmat/scalar_functions.hpp"

namespace bregmat {

/// Tolerance of the density-matrix invariants (PSD and unit trace).
inline constexpr double kDensityTolerance = 1e-10;

/// Positive semidefinite, unit-trace matrix with its tensor-factor dims.
class DensityMatrix {
 public:
  /// DomainError when rho is not PSD or not trace one (to 1e-10);
  /// ContractViolation when dims do not match.
  DensityMatrix(HermitianMatrix rho, Dims dims);
  explicit DensityMatrix(HermitianMatrix rho);

  const HermitianMatrix& matrix() const noexcept { return rho_; }
  const Dims& dims() const noexcept { return dims_; }
  int dim() const noexcept { return rho_.dim(); }

  /// Reduced state on the listed (0-based) factors.
  DensityMatrix reduced(std::initializer_list<int> keep) const;

 private:
  HermitianMatrix rho_;
  Dims dims_;
};

/// Density matrix on three tensor factors (d1, d2, d3).
class TripartiteState {
 public:
  explicit TripartiteState(DensityMatrix rho);

  const DensityMatrix& state() const noexcept { return rho_; }
  int d1() const { return rho_.dims()[0]; }
  int d2() const { return rho_.dims()[1]; }
  int d3() const { return rho_.dims()[2]; }

  DensityMatrix rho12() const { return rho_.reduced({0, 1}); }
  DensityMatrix rho23() const { return rho_.reduced({1, 2}); }
  DensityMatrix rho2() const { return rho_.reduced({1}); }

 private:
  DensityMatrix rho_;
};

/// Random tripartite state G G* / Tr on d1 d2 d3 dimensions.
TripartiteState random_tripartite(int d1, int d2, int d3, Engine& rng);

/// Tr rho^q summed over the positive eigenvalues.
double trace_power(const HermitianMatrix& rho, double q);

/// Tr f_q(rho) with f_q(x) = x ln_q x and f_q(0) = 0. Note the sign: this is
/// <= 0 for states, the negative of the physicists' Tsallis entropy. q > 0.
double tsallis_entropy(double q, const DensityMatrix& rho);

/// -Tr rho ln rho (conventional, nonnegative).
double von_neumann_entropy(const DensityMatrix& rho);

/// The rank-two (2,2,2) state 1/2 (|v><v| + |w><w|) with
/// v = (|010> + |100>)/sqrt2 and w = (|011> + |101>)/sqrt2, which makes the
/// dimension-weighted Tsallis SSA inequality an equality for every q.
TripartiteState saturating_state();

/// Both sides of the dimension-weighted Tsallis strong subadditivity
///   d3^(1-q) Tr rho12^q + d1^(1-q) Tr rho23^q
///     <= Tr rho123^q + (d1 d3)^(1-q) Tr rho2^q,      1 < q <= 2,
/// and, at q = 1, of von Neumann SSA S(123) + S(2) <= S(12) + S(23)
/// (conventional entropies). slack = rhs - lhs >= 0.
struct WeightedSsaCheck {
  double q = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool von_neumann_limit = false;
};
WeightedSsaCheck weighted_tsallis_ssa_check(double q, const TripartiteState& rho);

/// (Tr rho12^q + Tr rho23^q) - (Tr rho123^q + Tr rho2^q); positive values
/// are violations of plain Tsallis strong subadditivity.
double plain_tsallis_ssa_gap(double q, const TripartiteState& rho);

/// The same inequality written as a monotonicity of Tsallis Bregman
/// divergences under pinching:
///   lhs = H(rho12 (x) I/d3, I/d1 (x) rho2 (x) I/d3)
///   rhs = H(rho123, I/d1 (x) rho23)
/// computed directly with bregman_extended (`direct_*`) and from the trace
/// powers (`purity_*`).
struct SsaDivergenceSides {
  double direct_lhs = 0.0;
  double direct_rhs = 0.0;
  double purity_lhs = 0.0;
  double purity_rhs = 0.0;
};
SsaDivergenceSides ssa_divergence_sides(double q, const TripartiteState& rho);

/// Generalized Pauli operators X^a Z^b on C^n, a, b = 0..n-1 (n^2 unitaries).
std::vector<ComplexMatrix> weyl_unitaries(int n);

/// X -> (Tr_k X) (x) I/d_k placed back on factor k, for a bipartite X with
/// dims (m, n) and traced_factor k in {0, 1}. `mixture` is the same map
/// realized as the uniform mixture of the n^2 (or m^2) Weyl conjugations.
struct PinchResult {
  HermitianMatrix direct;
  HermitianMatrix mixture;
  double mixture_residual = 0.0;  // Frobenius norm of direct - mixture
};
PinchResult pinch_to_uniform(const HermitianMatrix& x, const Dims& dims,
                             int traced_factor);

/// sum_k c_k U_k X U_k*. ContractViolation for negative weights, weights not
/// summing to one (1e-12) or non-unitary members (1e-10).
HermitianMatrix unitary_mixture_apply(const HermitianMatrix& x,
                                      std::span<const ComplexMatrix> unitaries,
                                      std::span<const double> weights);

/// [[0, I], [I, 0]] on C^n (+) C^n.
ComplexMatrix block_swap_unitary(int n);

/// Partial-trace monotonicity counterexample built on the saturating state:
///   lhs = H_fq(rho12, I/2 (x) rho2), rhs = H_fq(rho123, I/2 (x) rho23),
/// ratio = lhs / rhs, expected to equal 2^(q-1) for 1 < q <= 2.
struct MonotonicityDemo {
  double q = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double expected_ratio = 0.0;
  bool monotonicity_violated = false;  // lhs > rhs
};
MonotonicityDemo partial_trace_monotonicity_demo(double q);

/// H_f(A, B) - H_f(X A X*, X B X*) for a k x n contraction X (largest
/// singular value <= 1 + 1e-10), evaluated with bregman_extended.
double contraction_monotonicity_check(const ScalarFunctionFamily& fam,
                                      const HermitianMatrix& a,
                                      const HermitianMatrix& b,
                                      const ComplexMatrix& x);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& x);

/// r G / ||G|| for a k x n Ginibre G and r uniform in [1/2, 1].
ComplexMatrix random_contraction(int k, int n, Engine& rng);

}  // namespace bregmat

#endif  // BREGMAT_QUANTUM_STATES_HPP
