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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "bregmat/bregman.hpp"
#include "bregmat/errors.hpp"
#include "oracles.hpp"

using namespace bregmat;

namespace {

std::vector<ScalarFunctionFamily> families() {
  return {ScalarFunctionFamily::entropy(), ScalarFunctionFamily::tsallis(1.3),
          ScalarFunctionFamily::tsallis(2.0), ScalarFunctionFamily::shifted_entropy(0.5),
          ScalarFunctionFamily::quadratic(1.0)};
}

HermitianMatrix block_diag(const HermitianMatrix& a, const HermitianMatrix& b) {
  ComplexMatrix m = ComplexMatrix::Zero(a.dim() + b.dim(), a.dim() + b.dim());
  m.topLeftCorner(a.dim(), a.dim()) = a.matrix();
  m.bottomRightCorner(b.dim(), b.dim()) = b.matrix();
  return HermitianMatrix(m);
}

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace

TEST_CASE("method names") {
  for (Method m : kAllMethods) CHECK(parse_method(to_string(m)) == m);
  CHECK(to_string(Method::kIntegral1d) == "integral-1d");
  CHECK_THROWS_AS(parse_method("simpson"), std::invalid_argument);
}

TEST_CASE("fixed examples") {
  Engine rng(1);
  const HermitianMatrix x = random_pd(3, rng), y = random_pd(3, rng);
  for (const auto& fam : families())
    for (Method m : kAllMethods) CHECK(std::abs(bregman(fam, x, x, m).value) <= 1e-12);

  for (double gamma : {0.5, 1.0, 3.0}) {
    const auto fam = ScalarFunctionFamily::quadratic(gamma);
    const ComplexMatrix d = x.matrix() - y.matrix();
    const double expected = gamma / 2 * (d * d).trace().real();
    for (Method m : kAllMethods)
      CHECK(bregman(fam, x, y, m).value == doctest::Approx(expected).epsilon(1e-10));
  }

  const double expected = 2 * std::log(2.0) - 1;
  for (Method m : kAllMethods)
    CHECK(bregman(ScalarFunctionFamily::entropy(), HermitianMatrix::diagonal({2.0, 1.0}),
                  HermitianMatrix::identity(2), m)
              .value == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("closed form against an independent oracle") {
  Engine rng(2);
  for (int k = 0; k < 30; ++k) {
    const HermitianMatrix x = random_pd(4, rng), y = random_pd(4, rng);
    for (const auto& fam : families()) {
      const double ref = oracle::bregman([&](double v) { return fam.f(v); },
                                         [&](double v) { return fam.fprime(v); }, x.matrix(),
                                         y.matrix());
      CHECK(bregman(fam, x, y).value == doctest::Approx(ref).epsilon(1e-10));
    }
  }
}

TEST_CASE("all four representations agree") {
  for (int n : {3, 4}) {
    for (std::uint64_t s = 0; s < 20; ++s) {
      Engine rng(derive_seed(500 + static_cast<std::uint64_t>(n), s));
      const HermitianMatrix x = random_pd(n, rng), y = random_pd(n, rng);
      for (const auto& fam : families()) {
        const auto all = bregman_all_methods(fam, x, y);
        CHECK((!all[0].residual_to_closed.has_value() || *all[0].residual_to_closed == 0.0));
        for (size_t a = 0; a < 4; ++a)
          for (size_t b = a + 1; b < 4; ++b) {
            const double va = all[a].value, vb = all[b].value;
            CHECK(std::abs(va - vb) <= 1e-8 + 1e-8 * std::max(std::abs(va), std::abs(vb)));
          }
        for (size_t a = 1; a < 4; ++a)
          CHECK(*all[a].residual_to_closed == doctest::Approx(std::abs(all[a].value - all[0].value)));
      }
    }
  }
}

TEST_CASE("invariants") {
  Engine rng(3);
  for (int k = 0; k < 40; ++k) {
    const HermitianMatrix x = random_pd(3, rng), y = random_pd(3, rng), z = random_pd(3, rng);
    const ComplexMatrix u = random_unitary(3, rng);
    const double t = std::uniform_real_distribution<double>(0, 1)(rng);
    for (const auto& fam : families()) {
      const double h = bregman(fam, x, y).value;
      CHECK(h >= -1e-10);
      CHECK(close(bregman(fam, x.conjugated_by(u), y.conjugated_by(u)).value, h, 1e-9));
      CHECK(close(bregman(plus_affine(fam, -1.3, 0.4), x, y).value, h, 1e-9));
      const double mix = bregman(fam, t * x + (1 - t) * z, y).value;
      CHECK(mix <= t * h + (1 - t) * bregman(fam, z, y).value + 1e-9);
      CHECK(close(bregman(fam, block_diag(x, z), block_diag(y, x)).value,
                  h + bregman(fam, z, x).value, 1e-9));
      for (int nn : {2, 3}) {
        const HermitianMatrix iu = HermitianMatrix::identity(nn) / nn;
        CHECK(close(bregman(fam, tensor(x, iu), tensor(y, iu)).value,
                    nn * bregman(fam, x / nn, y / nn).value, 1e-9));
      }
    }
    for (double lam : {0.1, 1.0, 10.0}) {
      const HermitianMatrix shift = lam * HermitianMatrix::identity(3);
      CHECK(close(bregman(ScalarFunctionFamily::shifted_entropy(lam), x, y).value,
                  bregman(ScalarFunctionFamily::entropy(), x + shift, y + shift).value, 1e-9));
    }
    for (double q : {1.3, 2.0})
      for (double lam : {0.5, 2.0}) {
        const auto fam = ScalarFunctionFamily::tsallis(q);
        const double lhs = bregman(fam, lam * x, lam * y).value;
        const double rhs = std::pow(lam, q) * bregman(fam, x, y).value;
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs));
      }
  }
}

TEST_CASE("nonnegativity on 1000 random pairs") {
  double worst = std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 0; s < 1000; ++s) {
    Engine rng(derive_seed(42, s));
    const HermitianMatrix x = random_pd(3, rng), y = random_pd(3, rng);
    for (const auto& fam : families()) worst = std::min(worst, bregman(fam, x, y).value);
  }
  CHECK(worst >= -1e-10);
}

TEST_CASE("domain errors") {
  const auto fam = ScalarFunctionFamily::entropy();
  const HermitianMatrix sing = HermitianMatrix::diagonal({1.0, 0.0});
  for (Method m : kAllMethods)
    CHECK_THROWS_AS(bregman(fam, sing, HermitianMatrix::identity(2), m), DomainError);
  CHECK_THROWS_AS(bregman(fam, HermitianMatrix::identity(2), HermitianMatrix::identity(3)),
                  ContractViolation);
}

TEST_CASE("Tsallis closed form") {
  Engine rng(4);
  for (int k = 0; k < 100; ++k) {
    const HermitianMatrix a = random_pd(3, rng), b = random_pd(3, rng);
    const ComplexMatrix d = a.matrix() - b.matrix();
    CHECK(tsallis_closed_form(2.0, a, b) == doctest::Approx((d * d).trace().real()).epsilon(1e-10));
    CHECK(std::abs(tsallis_closed_form(1.5, a, a)) <= 1e-12);
    for (double q : {0.5, 1.3, 1.5, 2.0, 3.0}) {
      const double closed = tsallis_closed_form(q, a, b);
      CHECK(std::abs(closed - bregman(ScalarFunctionFamily::tsallis(q), a, b, Method::kEigen).value) <=
            1e-9 * std::max(1.0, std::abs(closed)));
    }
  }
  CHECK_THROWS_AS(tsallis_closed_form(1.0, HermitianMatrix::identity(2), HermitianMatrix::identity(2)),
                  DomainError);
}

TEST_CASE("continuous extension to singular arguments") {
  const auto ent = ScalarFunctionFamily::entropy();
  const HermitianMatrix p = HermitianMatrix::diagonal({1.0, 0.0});
  CHECK(bregman_extended(ent, p, p).value == 0.0);
  const DivergenceValue inf =
      bregman_extended(ent, HermitianMatrix::diagonal({1.0, 0.0}), HermitianMatrix::diagonal({0.0, 1.0}));
  CHECK(inf.is_infinite());
  CHECK(inf.value > 0);
  // ker Y inside ker X keeps it finite even for entropy: relative entropy of
  // diag(1,0) to diag(1/2,1/2) is ln 2 (x ln x Bregman, both of trace 1).
  CHECK(bregman_extended(ent, p, HermitianMatrix::diagonal({0.5, 0.5})).value ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  // Tsallis q = 2: finite; closed form Tr (X - Y)^2 = 1/2.
  const auto t2 = ScalarFunctionFamily::tsallis(2.0);
  const HermitianMatrix half = HermitianMatrix::diagonal({0.5, 0.5});
  const DivergenceValue v = bregman_extended(t2, HermitianMatrix::diagonal({0.0, 1.0}), half);
  CHECK(v.value == doctest::Approx(0.5).epsilon(1e-12));
  // ker Y not inside ker X with finite f'(0): finite too.
  const double swap = bregman_extended(t2, HermitianMatrix::diagonal({1.0, 0.0}),
                                       HermitianMatrix::diagonal({0.0, 1.0})).value;
  CHECK(swap == doctest::Approx(2.0).epsilon(1e-12));

  // Numeric eps-limit trend, X_eps = (X + eps I)/(1 + 2 eps).
  const HermitianMatrix x = HermitianMatrix::diagonal({1.0, 0.0});
  const auto t15 = ScalarFunctionFamily::tsallis(1.5);
  const double exact = bregman_extended(t15, x, half).value;
  double prev = std::numeric_limits<double>::infinity();
  for (double eps : {1e-3, 1e-5, 1e-7}) {
    const HermitianMatrix xe = (x + eps * HermitianMatrix::identity(2)) / (1 + 2 * eps);
    const double err = std::abs(bregman(t15, xe, half).value - exact);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-5);

  // Agrees with the plain divergence on positive definite input.
  Engine rng(5);
  for (int k = 0; k < 20; ++k) {
    const HermitianMatrix a = random_pd(3, rng), b = random_pd(3, rng);
    for (const auto& fam : {ent, t15, t2})
      CHECK(bregman_extended(fam, a, b).value ==
            doctest::Approx(bregman(fam, a, b).value).epsilon(1e-10));
  }

  // Random rank-deficient states with a shared kernel stay finite and
  // reflexive.
  for (int k = 0; k < 10; ++k) {
    const ComplexMatrix g = ginibre(4, 2, rng);
    const HermitianMatrix r = HermitianMatrix::symmetrized(g * g.adjoint());
    CHECK(std::abs(bregman_extended(ent, r, r).value) <= 1e-10);
  }

  CHECK_THROWS_AS(bregman_extended(ScalarFunctionFamily::power(-1.0), p, p), UnsupportedError);
  CHECK_THROWS_AS(bregman_extended(ent, HermitianMatrix::diagonal({1.0, -0.1}), p), DomainError);
}
