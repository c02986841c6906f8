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

#ifndef BREGMAT_CONVEXITY_LAB_HPP
#define BREGMAT_CONVEXITY_LAB_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bregmat/linalg.hpp"
#include "bregmat/scalar_functions.hpp"

namespace bregmat {

/// Slack below -kViolationTolerance declares a violation.
inline constexpr double kViolationTolerance = 1e-8;

/// Floor added to Ginibre samples, G G* + floor I, in every campaign.
inline constexpr double kSamplingFloor = 0.05;

/// t H(X1,Y1) + (1-t) H(X2,Y2) - H(tX1 + (1-t)X2, tY1 + (1-t)Y2), closed form.
double joint_convexity_trial(const ScalarFunctionFamily& fam,
                             const HermitianMatrix& x1, const HermitianMatrix& y1,
                             const HermitianMatrix& x2, const HermitianMatrix& y2,
                             double t);

/// Smallest eigenvalue of
///   (Df'[tX1 + (1-t)X2])^-1 - t (Df'[X1])^-1 - (1-t) (Df'[X2])^-1
/// as an n^2 x n^2 symmetric matrix.
double operator_concavity_trial(const ScalarFunctionFamily& fam,
                                const HermitianMatrix& x1,
                                const HermitianMatrix& x2, double t);

/// t Tr B1 Df'[A1](B1) + (1-t) Tr B2 Df'[A2](B2) - Tr B Df'[A](B) with A, B
/// the t-mixtures.
double quadratic_form_convexity_trial(const ScalarFunctionFamily& fam,
                                      const HermitianMatrix& a1,
                                      const HermitianMatrix& b1,
                                      const HermitianMatrix& a2,
                                      const HermitianMatrix& b2, double t);

enum class Criterion { kConcavity, kJointConvexity, kQuadraticForm };

std::string to_string(Criterion c);
/// "concavity", "joint-convexity", "quadratic-form".
Criterion parse_criterion(const std::string& name);

enum class Verdict { kHeld, kViolated };
std::string to_string(Verdict v);

/// Inputs of one sampled trial. For kConcavity `matrices` is {X1, X2}; for
/// kJointConvexity {X1, Y1, X2, Y2}; for kQuadraticForm {A1, B1, A2, B2}.
struct Witness {
  std::uint64_t trial = 0;
  double t = 0.5;
  std::vector<HermitianMatrix> matrices;
};

struct ConvexityReport {
  std::string family;
  Criterion criterion = Criterion::kConcavity;
  int dimension = 0;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  double min_slack = 0.0;
  double tol_violation = kViolationTolerance;
  Witness worst_witness;
  Verdict verdict = Verdict::kHeld;
};

/// The deterministic inputs of trial `index` of a campaign (seeded with
/// derive_seed(seed, index)); `t` is the uniformly drawn mixing weight.
Witness sample_trial(Criterion c, int n, std::uint64_t seed,
                     std::uint64_t index);

/// Slack of the criterion at the witness' inputs and t.
double evaluate_witness(const ScalarFunctionFamily& fam, Criterion c,
                        const Witness& w);

/// Runs `trials` seeded trials of one criterion. Each trial is evaluated at
/// its uniform t and at t = 1/2; the smaller slack counts. Results do not
/// depend on `workers` (0 = hardware concurrency).
ConvexityReport entropy_class_probe(const ScalarFunctionFamily& fam, int n,
                                    std::uint64_t trials, std::uint64_t seed,
                                    Criterion criterion,
                                    double tol_violation = kViolationTolerance,
                                    unsigned workers = 1);

}  // namespace bregmat

#endif  // BREGMAT_CONVEXITY_LAB_HPP
