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

#include "bregmat/convexity_lab.hpp"

#include <limits>
#include <stdexcept>

#include "bregmat/bregman.hpp"
#include "bregmat/errors.hpp"
#include "bregmat/matrix_calculus.hpp"
#include "bregmat/parallel.hpp"

namespace bregmat {

namespace {

void require_weight(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("mixing weight t must lie in [0, 1]");
}

double quadratic_form(const ScalarFunctionFamily& fam, const HermitianMatrix& a,
                      const HermitianMatrix& b) {
  return hs_inner(b, frechet_derivative(fam, 1, a, b));
}

}  // namespace

double joint_convexity_trial(const ScalarFunctionFamily& fam,
                             const HermitianMatrix& x1, const HermitianMatrix& y1,
                             const HermitianMatrix& x2, const HermitianMatrix& y2,
                             double t) {
  require_weight(t);
  const double h1 = bregman(fam, x1, y1).value;
  const double h2 = bregman(fam, x2, y2).value;
  const double hm = bregman(fam, t * x1 + (1.0 - t) * x2, t * y1 + (1.0 - t) * y2).value;
  return t * h1 + (1.0 - t) * h2 - hm;
}

double operator_concavity_trial(const ScalarFunctionFamily& fam,
                                const HermitianMatrix& x1,
                                const HermitianMatrix& x2, double t) {
  require_weight(t);
  const Superoperator inv1 = superop_inverse(superoperator_of(fam, x1));
  const Superoperator inv2 = superop_inverse(superoperator_of(fam, x2));
  const Superoperator invm =
      superop_inverse(superoperator_of(fam, t * x1 + (1.0 - t) * x2));
  return (invm - t * inv1 - (1.0 - t) * inv2).min_eigenvalue();
}

double quadratic_form_convexity_trial(const ScalarFunctionFamily& fam,
                                      const HermitianMatrix& a1,
                                      const HermitianMatrix& b1,
                                      const HermitianMatrix& a2,
                                      const HermitianMatrix& b2, double t) {
  require_weight(t);
  const double q1 = quadratic_form(fam, a1, b1);
  const double q2 = quadratic_form(fam, a2, b2);
  const double qm =
      quadratic_form(fam, t * a1 + (1.0 - t) * a2, t * b1 + (1.0 - t) * b2);
  return t * q1 + (1.0 - t) * q2 - qm;
}

std::string to_string(Criterion c) {
  switch (c) {
    case Criterion::kConcavity:
      return "concavity";
    case Criterion::kJointConvexity:
      return "joint-convexity";
    case Criterion::kQuadraticForm:
      return "quadratic-form";
  }
  return "unknown";
}

Criterion parse_criterion(const std::string& name) {
  for (Criterion c : {Criterion::kConcavity, Criterion::kJointConvexity,
                      Criterion::kQuadraticForm})
    if (to_string(c) == name) return c;
  throw std::invalid_argument("unknown criterion '" + name + "'");
}

std::string to_string(Verdict v) {
  return v == Verdict::kHeld ? "held" : "violated";
}

Witness sample_trial(Criterion c, int n, std::uint64_t seed, std::uint64_t index) {
  Engine rng(derive_seed(seed, index));
  Witness w;
  w.trial = index;
  switch (c) {
    case Criterion::kConcavity:
      w.matrices = {random_pd(n, rng, kSamplingFloor), random_pd(n, rng, kSamplingFloor)};
      break;
    case Criterion::kJointConvexity:
      w.matrices = {random_pd(n, rng, kSamplingFloor), random_pd(n, rng, kSamplingFloor),
                    random_pd(n, rng, kSamplingFloor), random_pd(n, rng, kSamplingFloor)};
      break;
    case Criterion::kQuadraticForm:
      w.matrices = {random_pd(n, rng, kSamplingFloor), random_hermitian(n, rng),
                    random_pd(n, rng, kSamplingFloor), random_hermitian(n, rng)};
      break;
  }
  w.t = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return w;
}

double evaluate_witness(const ScalarFunctionFamily& fam, Criterion c,
                        const Witness& w) {
  const auto& m = w.matrices;
  switch (c) {
    case Criterion::kConcavity:
      return operator_concavity_trial(fam, m.at(0), m.at(1), w.t);
    case Criterion::kJointConvexity:
      return joint_convexity_trial(fam, m.at(0), m.at(1), m.at(2), m.at(3), w.t);
    case Criterion::kQuadraticForm:
      return quadratic_form_convexity_trial(fam, m.at(0), m.at(1), m.at(2), m.at(3), w.t);
  }
  throw ContractViolation("evaluate_witness: unknown criterion");
}

ConvexityReport entropy_class_probe(const ScalarFunctionFamily& fam, int n,
                                    std::uint64_t trials, std::uint64_t seed,
                                    Criterion criterion, double tol_violation,
                                    unsigned workers) {
  if (trials < 1) throw ContractViolation("entropy_class_probe: trials must be >= 1");
  if (n < 1) throw ContractViolation("entropy_class_probe: dimension must be >= 1");

  struct Outcome {
    double slack;
    double t;
  };
  std::vector<Outcome> outcomes(trials);
  parallel_for(trials, workers, [&](std::size_t i) {
    Witness w = sample_trial(criterion, n, seed, i);
    const double at_uniform = evaluate_witness(fam, criterion, w);
    const double t_uniform = w.t;
    w.t = 0.5;
    const double at_half = evaluate_witness(fam, criterion, w);
    outcomes[i] = at_half < at_uniform ? Outcome{at_half, 0.5}
                                       : Outcome{at_uniform, t_uniform};
  });

  std::size_t worst = 0;
  for (std::size_t i = 1; i < outcomes.size(); ++i)
    if (outcomes[i].slack < outcomes[worst].slack) worst = i;

  ConvexityReport r;
  r.family = fam.to_string();
  r.criterion = criterion;
  r.dimension = n;
  r.seed = seed;
  r.trials = trials;
  r.min_slack = outcomes[worst].slack;
  r.tol_violation = tol_violation;
  r.worst_witness = sample_trial(criterion, n, seed, worst);
  r.worst_witness.t = outcomes[worst].t;
  r.verdict = r.min_slack < -tol_violation ? Verdict::kViolated : Verdict::kHeld;
  return r;
}

}  // namespace bregmat
